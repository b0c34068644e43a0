"""Ad-hoc kernel validation before wiring the rest of the package."""

import itertools
import random
import sys

sys.path.insert(0, "src")

from quadpart._kernels import pure


def brute_max_weight_perfect(n, w):
    """Best perfect-matching weight by enumeration (n even)."""
    best = None

    def rec(avail, acc):
        nonlocal best
        if not avail:
            if best is None or acc > best:
                best = acc
            return
        a = avail[0]
        for idx in range(1, len(avail)):
            b = avail[idx]
            rest = avail[1:idx] + avail[idx + 1 :]
            rec(rest, acc + w[a * n + b])

    rec(list(range(n)), 0)
    return best


def mate_weight(n, w, mate):
    assert all(mate[v] != -1 and mate[mate[v]] == v and mate[v] != v for v in range(n))
    return sum(w[v * n + mate[v]] for v in range(n)) // 2


def random_graph(rng, n, lo, hi):
    w = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(lo, hi)
            w[i * n + j] = x
            w[j * n + i] = x
    return w


def main():
    rng = random.Random(12345)
    trials = 0
    for rep in range(1500):
        n = rng.choice([2, 4, 6, 8, 10])
        lo, hi = rng.choice([(0, 20), (0, 3), (-15, 15), (0, 1), (5, 5), (0, 100)])
        w = random_graph(rng, n, lo, hi)
        mate = pure.max_weight_perfect_matching(n, w)
        got = mate_weight(n, w, mate)
        want = brute_max_weight_perfect(n, w)
        assert got == want, (n, lo, hi, got, want, w)
        trials += 1
    print(f"matching: {trials} random graphs OK")

    # quad partition: brute force over all partitions vs kernel
    def all_partitions(items):
        if not items:
            yield []
            return
        a = items[0]
        rest = items[1:]
        for trio in itertools.combinations(rest, 3):
            q = (a,) + trio
            left = [x for x in rest if x not in trio]
            for tail in all_partitions(left):
                yield [q] + tail

    for rep in range(300):
        k = rng.choice([1, 2, 3])
        n = 4 * k
        cost4 = [0] * (n ** 4)
        for quad in itertools.combinations(range(n), 4):
            i, j, l, m = quad
            cost4[((i * n + j) * n + l) * n + m] = rng.randint(0, 30)

        def qc(q):
            i, j, l, m = q
            return cost4[((i * n + j) * n + l) * n + m]

        best = min(
            sum(qc(q) for q in p) for p in all_partitions(list(range(n)))
        )
        # weak incumbent: first canonical partition
        first = next(all_partitions(list(range(n))))
        ub = sum(qc(q) for q in first)
        cost, quads, nodes, done = pure.solve_quad_partition(
            n, cost4, ub, first, 0
        )
        assert done
        assert cost == best, (n, cost, best)
        assert sum(qc(q) for q in quads) == cost
        flat = sorted(x for q in quads for x in q)
        assert flat == list(range(n))
    print("quad partition: 300 random tables OK")

    # partition count sanity: k=2 unpruned-like check is done in exact.py later
    print("kernel scratch check passed")


if __name__ == "__main__":
    main()
