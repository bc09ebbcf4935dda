"""Test families shared by the acceptance and property suites."""

from montlab.pointsets import GeneratorSpec, generate, make_rng


def theorem2_family(d, seed=0):
    """50 uniform sets with N in [10, 100] plus 10 structured sets (60 in total).

    On S^2 the structured part holds Fibonacci (N = 50, 100, 200) and spiral
    (N = 100) sets; the rest alternates clustered pairs and antipodal
    doublings of uniform bases.
    """
    rng = make_rng(seed)
    sets = []
    for i, n in enumerate(rng.integers(10, 101, size=50)):
        sets.append(generate(GeneratorSpec("uniform", int(n), d=d, seed=1000 * seed + i)))
    if d == 2:
        sets += [generate(GeneratorSpec("fibonacci", n)) for n in (50, 100, 200)]
        sets.append(generate(GeneratorSpec("spiral", 100)))
    while len(sets) < 60:
        k = len(sets)
        n = 2 * (20 + 5 * k % 40)
        if k % 2 == 0:
            spec = GeneratorSpec("cluster-pairs", n, d=d, base_kind="uniform", seed=k, eps=1e-2 * (k % 3 + 1))
        else:
            spec = GeneratorSpec("antipodal", n, d=d, base_kind="uniform", seed=k)
        sets.append(generate(spec))
    return sets
