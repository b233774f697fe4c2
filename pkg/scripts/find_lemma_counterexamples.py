"""List the parameter points where the two failing tail estimates break.

Prints the errorlem2 grid violations and the errorsum violations by component.
"""

from collections import Counter

from partition_certify import lemmas


def main() -> None:
    rep = lemmas.tail_lemma_sweep("errorlem2", count=100, seed=42)
    print(f"errorlem2: {len(rep.violations)} of {rep.total} grid points fail")
    for point in rep.violations:
        print("  ", dict(point))
    rep = lemmas.errorsum_sweep(20, (10, 116, 1000))
    by_component = Counter(j for j, _, _ in rep.violations)
    print(f"errorsum: {len(rep.violations)} of {rep.total} points fail; by component {dict(by_component)}")


if __name__ == "__main__":
    main()
