"""Pure-Python kernels: blossom matching and quad-partition search.

This module is the fallback twin of the compiled extension
``quadpart._kernels._fast``; both expose the same two entry points and must
behave identically:

* ``max_weight_perfect_matching(n, w)`` -- maximum-cardinality matching of
  maximum total weight on a dense graph with integer weights. On a complete
  graph with even ``n`` the result is a perfect matching.
* ``solve_quad_partition(...)`` -- branch-and-bound minimization over all
  partitions of ``n`` items into groups of four, driven by a precomputed
  integer cost table.

The matching code follows Galil's primal-dual blossom framework (the classic
O(n^3) formulation); vertices are ``0..n-1`` and nontrivial blossoms are
identified by integers ``n..2n-1`` so that all bookkeeping lives in flat
lists. Arithmetic is plain Python int, hence exact for any magnitude.
"""

from __future__ import annotations

BACKEND = "pure"

_FREE = 0
_S = 1
_T = 2


def max_weight_perfect_matching(n, w, verify=True):
    """Maximum-weight maximum-cardinality matching on a dense graph.

    Parameters:
        n: number of vertices.
        w: flat list of n*n integer weights, symmetric; the diagonal is
           ignored. Every vertex pair is an edge (dense graph).
        verify: re-check the optimality certificate (dual feasibility and
           complementary slackness) before returning.

    Returns:
        mate: list of length n; mate[v] is the partner of v, or -1.
    """
    if n == 0:
        return []
    if n == 1:
        return [-1]

    maxweight = max(w)

    # Vertex duals are pre-multiplied by two so that integer weights keep
    # every quantity integral throughout.
    dualvar = [maxweight] * n
    blossomdual = [0] * (2 * n)

    mate = [-1] * n
    label = [0] * (2 * n)
    # labeledge[b] = (v, u): b got its label through edge (v, u), u inside b.
    labeledge_v = [-1] * (2 * n)
    labeledge_w = [-1] * (2 * n)
    inblossom = list(range(n))
    blossomparent = [-1] * (2 * n)
    blossombase = list(range(n)) + [-1] * n
    # For nontrivial blossoms b >= n: ordered sub-blossoms and linking edges.
    blossomchilds = [None] * (2 * n)
    blossomedges = [None] * (2 * n)
    mybestedges = [None] * (2 * n)
    bestedge_v = [-1] * (2 * n)
    bestedge_w = [-1] * (2 * n)
    unused = list(range(2 * n - 1, n - 1, -1))
    allowed = set()
    queue = []

    def slack(v, u):
        return dualvar[v] + dualvar[u] - 2 * w[v * n + u]

    def leaves(b):
        if b < n:
            return [b]
        out = []
        stack = list(blossomchilds[b])
        while stack:
            t = stack.pop()
            if t < n:
                out.append(t)
            else:
                stack.extend(blossomchilds[t])
        return out

    def assign_label(u, t, v):
        b = inblossom[u]
        assert label[u] == _FREE and label[b] == _FREE
        label[u] = label[b] = t
        if v >= 0:
            labeledge_v[u] = labeledge_v[b] = v
            labeledge_w[u] = labeledge_w[b] = u
        else:
            labeledge_v[u] = labeledge_v[b] = -1
            labeledge_w[u] = labeledge_w[b] = -1
        bestedge_v[u] = bestedge_v[b] = -1
        if t == _S:
            queue.extend(leaves(b))
        elif t == _T:
            base = blossombase[b]
            assign_label(mate[base], _S, base)

    def scan_blossom(v, u):
        # Trace back from both endpoints, dropping breadcrumbs, until the
        # paths meet (new blossom) or both hit roots (augmenting path).
        path = []
        base = -1
        while v != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            assert label[b] == _S
            path.append(b)
            label[b] = 5
            if labeledge_v[b] == -1:
                assert mate[blossombase[b]] == -1
                v = -1
            else:
                assert labeledge_v[b] == mate[blossombase[b]]
                v = labeledge_v[b]
                b = inblossom[v]
                assert label[b] == _T
                v = labeledge_v[b]
            if u != -1:
                v, u = u, v
        for b in path:
            label[b] = _S
        return base

    def add_blossom(base, v, u):
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[u]
        b = unused.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        path = []
        edgs = [(v, u)]
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            edgs.append((labeledge_v[bv], labeledge_w[bv]))
            assert label[bv] == _T or (
                label[bv] == _S and labeledge_v[bv] == mate[blossombase[bv]]
            )
            v = labeledge_v[bv]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        edgs.reverse()
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            edgs.append((labeledge_w[bw], labeledge_v[bw]))
            assert label[bw] == _T or (
                label[bw] == _S and labeledge_v[bw] == mate[blossombase[bw]]
            )
            u = labeledge_v[bw]
            bw = inblossom[u]
        blossomchilds[b] = path
        blossomedges[b] = edgs
        assert label[bb] == _S
        label[b] = _S
        labeledge_v[b] = labeledge_v[bb]
        labeledge_w[b] = labeledge_w[bb]
        blossomdual[b] = 0
        for x in leaves(b):
            if label[inblossom[x]] == _T:
                queue.append(x)
            inblossom[x] = b
        # Merge least-slack edge lists of the sub-blossoms.
        bestedgeto = {}
        for bv in path:
            if bv >= n and mybestedges[bv] is not None:
                nblist = mybestedges[bv]
                mybestedges[bv] = None
            else:
                nblist = [
                    (x, y)
                    for x in leaves(bv)
                    for y in range(n)
                    if y != x
                ]
            for i, j in nblist:
                if inblossom[j] == b:
                    i, j = j, i
                bj = inblossom[j]
                if (
                    bj != b
                    and label[bj] == _S
                    and (
                        bj not in bestedgeto
                        or slack(i, j) < slack(*bestedgeto[bj])
                    )
                ):
                    bestedgeto[bj] = (i, j)
            bestedge_v[bv] = -1
        mybestedges[b] = list(bestedgeto.values())
        mybest = None
        mybestslack = 0
        for k in mybestedges[b]:
            kslack = slack(*k)
            if mybest is None or kslack < mybestslack:
                mybest = k
                mybestslack = kslack
        if mybest is None:
            bestedge_v[b] = -1
        else:
            bestedge_v[b], bestedge_w[b] = mybest

    def expand_blossom(b, endstage):
        # Trampoline over sub-blossom expansion to keep the stack flat.
        def _recurse(b, endstage):
            for s in blossomchilds[b]:
                blossomparent[s] = -1
                if s < n:
                    inblossom[s] = s
                elif endstage and blossomdual[s] == 0:
                    yield s
                else:
                    for x in leaves(s):
                        inblossom[x] = s
            if (not endstage) and label[b] == _T:
                # Relabel the sub-blossoms along the alternating path from
                # the entry sub-blossom to the base.
                entrychild = inblossom[labeledge_w[b]]
                childs = blossomchilds[b]
                edgs = blossomedges[b]
                j = childs.index(entrychild)
                if j & 1:
                    j -= len(childs)
                    jstep = 1
                else:
                    jstep = -1
                v, u = labeledge_v[b], labeledge_w[b]
                while j != 0:
                    if jstep == 1:
                        p, q = edgs[j]
                    else:
                        q, p = edgs[j - 1]
                    label[u] = _FREE
                    label[q] = _FREE
                    assign_label(u, _T, v)
                    allowed.add((p, q))
                    allowed.add((q, p))
                    j += jstep
                    if jstep == 1:
                        v, u = edgs[j]
                    else:
                        u, v = edgs[j - 1]
                    allowed.add((v, u))
                    allowed.add((u, v))
                    j += jstep
                bw = childs[j]
                label[u] = label[bw] = _T
                labeledge_v[u] = labeledge_v[bw] = v
                labeledge_w[u] = labeledge_w[bw] = u
                bestedge_v[bw] = -1
                j += jstep
                while childs[j] != entrychild:
                    bv = childs[j]
                    if label[bv] == _S:
                        j += jstep
                        continue
                    if bv < n:
                        x = bv if label[bv] != _FREE else -1
                    else:
                        x = -1
                        for t in leaves(bv):
                            if label[t] != _FREE:
                                x = t
                                break
                    if x != -1:
                        assert label[x] == _T
                        assert inblossom[x] == bv
                        label[x] = _FREE
                        label[mate[blossombase[bv]]] = _FREE
                        assign_label(x, _T, labeledge_v[x])
                    j += jstep
            label[b] = _FREE
            labeledge_v[b] = -1
            bestedge_v[b] = -1
            blossomparent[b] = -1
            blossombase[b] = -1
            blossomdual[b] = 0
            blossomchilds[b] = None
            blossomedges[b] = None
            mybestedges[b] = None
            unused.append(b)

        stack = [_recurse(b, endstage)]
        while stack:
            top = stack[-1]
            advanced = False
            for s in top:
                stack.append(_recurse(s, endstage))
                advanced = True
                break
            if not advanced:
                stack.pop()

    def augment_blossom(b, v):
        def _recurse(b, v):
            t = v
            while blossomparent[t] != b:
                t = blossomparent[t]
            if t >= n:
                yield (t, v)
            childs = blossomchilds[b]
            edgs = blossomedges[b]
            i = j = childs.index(t)
            if i & 1:
                j -= len(childs)
                jstep = 1
            else:
                jstep = -1
            while j != 0:
                j += jstep
                t = childs[j]
                if jstep == 1:
                    x, y = edgs[j]
                else:
                    y, x = edgs[j - 1]
                if t >= n:
                    yield (t, x)
                j += jstep
                t = childs[j]
                if t >= n:
                    yield (t, y)
                mate[x] = y
                mate[y] = x
            blossomchilds[b] = childs[i:] + childs[:i]
            blossomedges[b] = edgs[i:] + edgs[:i]
            blossombase[b] = blossombase[blossomchilds[b][0]]
            assert blossombase[b] == v

        stack = [_recurse(b, v)]
        while stack:
            top = stack[-1]
            advanced = False
            for args in top:
                stack.append(_recurse(*args))
                advanced = True
                break
            if not advanced:
                stack.pop()

    def augment_matching(v, u):
        for s, j in ((v, u), (u, v)):
            while True:
                bs = inblossom[s]
                assert label[bs] == _S
                assert (
                    labeledge_v[bs] == -1 and mate[blossombase[bs]] == -1
                ) or (labeledge_v[bs] == mate[blossombase[bs]])
                if bs >= n:
                    augment_blossom(bs, s)
                mate[s] = j
                if labeledge_v[bs] == -1:
                    break
                t = labeledge_v[bs]
                bt = inblossom[t]
                assert label[bt] == _T
                s, j = labeledge_v[bt], labeledge_w[bt]
                assert blossombase[bt] == t
                if bt >= n:
                    augment_blossom(bt, j)
                mate[j] = s

    def verify_optimum():
        # With forced maximum cardinality, vertex duals may be negative by
        # a common offset.
        vdualoffset = max(0, -min(dualvar))
        assert min(dualvar) + vdualoffset >= 0
        assert min(blossomdual) >= 0
        for v in range(n):
            for u in range(v + 1, n):
                s = dualvar[v] + dualvar[u] - 2 * w[v * n + u]
                vblossoms = [v]
                ublossoms = [u]
                while blossomparent[vblossoms[-1]] != -1:
                    vblossoms.append(blossomparent[vblossoms[-1]])
                while blossomparent[ublossoms[-1]] != -1:
                    ublossoms.append(blossomparent[ublossoms[-1]])
                vblossoms.reverse()
                ublossoms.reverse()
                for bi, bj in zip(vblossoms, ublossoms):
                    if bi != bj:
                        break
                    s += 2 * blossomdual[bi]
                assert s >= 0
                if mate[v] == u:
                    assert s == 0
        for v in range(n):
            assert mate[v] != -1 or dualvar[v] + vdualoffset == 0
        for b in range(n, 2 * n):
            if blossomdual[b] > 0 and blossombase[b] != -1:
                assert len(blossomedges[b]) % 2 == 1
                for i, j in blossomedges[b][1::2]:
                    assert mate[i] == j and mate[j] == i

    # Main loop: one stage per augmentation.
    while True:
        for i in range(2 * n):
            label[i] = _FREE
            labeledge_v[i] = -1
            bestedge_v[i] = -1
        for b in range(n, 2 * n):
            if blossombase[b] != -1:
                mybestedges[b] = None
        allowed.clear()
        queue.clear()

        for v in range(n):
            if mate[v] == -1 and label[inblossom[v]] == _FREE:
                assign_label(v, _S, -1)

        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                assert label[inblossom[v]] == _S
                for u in range(n):
                    if u == v:
                        continue
                    bv = inblossom[v]
                    bu = inblossom[u]
                    if bv == bu:
                        continue
                    kslack = 0
                    if (v, u) not in allowed:
                        kslack = slack(v, u)
                        if kslack <= 0:
                            allowed.add((v, u))
                            allowed.add((u, v))
                    if (v, u) in allowed:
                        if label[bu] == _FREE:
                            assign_label(u, _T, v)
                        elif label[bu] == _S:
                            base = scan_blossom(v, u)
                            if base >= 0:
                                add_blossom(base, v, u)
                            else:
                                augment_matching(v, u)
                                augmented = True
                                break
                        elif label[u] == _FREE:
                            assert label[bu] == _T
                            label[u] = _T
                            labeledge_v[u] = v
                            labeledge_w[u] = u
                    elif label[bu] == _S:
                        if bestedge_v[bv] == -1 or kslack < slack(
                            bestedge_v[bv], bestedge_w[bv]
                        ):
                            bestedge_v[bv] = v
                            bestedge_w[bv] = u
                    elif label[u] == _FREE:
                        if bestedge_v[u] == -1 or kslack < slack(
                            bestedge_v[u], bestedge_w[u]
                        ):
                            bestedge_v[u] = v
                            bestedge_w[u] = u

            if augmented:
                break

            # No augmenting path: perform a dual delta step. Cardinality is
            # forced maximal, so there is no delta1 cutoff; the stage only
            # ends when nothing else limits the step.
            deltatype = -1
            delta = 0
            deltaedge = (-1, -1)
            deltablossom = -1

            for v in range(n):
                if label[inblossom[v]] == _FREE and bestedge_v[v] != -1:
                    d = slack(bestedge_v[v], bestedge_w[v])
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = (bestedge_v[v], bestedge_w[v])

            for b in range(2 * n):
                if (
                    blossomparent[b] == -1
                    and (b < n or blossombase[b] != -1)
                    and label[b] == _S
                    and bestedge_v[b] != -1
                ):
                    kslack = slack(bestedge_v[b], bestedge_w[b])
                    assert kslack % 2 == 0
                    d = kslack // 2
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = (bestedge_v[b], bestedge_w[b])

            for b in range(n, 2 * n):
                if (
                    blossombase[b] != -1
                    and blossomparent[b] == -1
                    and label[b] == _T
                    and (deltatype == -1 or blossomdual[b] < delta)
                ):
                    delta = blossomdual[b]
                    deltatype = 4
                    deltablossom = b

            if deltatype == -1:
                # Maximum cardinality reached; with a final settling step
                # the optimum becomes verifiable.
                deltatype = 1
                delta = max(0, min(dualvar))

            for v in range(n):
                lab = label[inblossom[v]]
                if lab == _S:
                    dualvar[v] -= delta
                elif lab == _T:
                    dualvar[v] += delta
            for b in range(n, 2 * n):
                if blossombase[b] != -1 and blossomparent[b] == -1:
                    if label[b] == _S:
                        blossomdual[b] += delta
                    elif label[b] == _T:
                        blossomdual[b] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                v, u = deltaedge
                assert label[inblossom[v]] == _S
                allowed.add((v, u))
                allowed.add((u, v))
                queue.append(v)
            elif deltatype == 3:
                v, u = deltaedge
                allowed.add((v, u))
                allowed.add((u, v))
                assert label[inblossom[v]] == _S
                queue.append(v)
            else:
                expand_blossom(deltablossom, False)

        for v in range(n):
            if mate[v] != -1:
                assert mate[mate[v]] == v

        if not augmented:
            break

        for b in range(n, 2 * n):
            if (
                blossombase[b] != -1
                and blossomparent[b] == -1
                and label[b] == _S
                and blossomdual[b] == 0
            ):
                expand_blossom(b, True)

    if verify:
        verify_optimum()

    return mate


def solve_quad_partition(n, cost4, ub_cost, ub_quads, node_budget):
    """Branch-and-bound minimum-cost partition of n items into 4-sets.

    Parameters:
        n: number of items, divisible by 4.
        cost4: flat list of n**4 integer costs; entry
            ((i*n + j)*n + l)*n + m holds the cost of quad {i,j,l,m} for
            i < j < l < m (other entries are ignored).
        ub_cost, ub_quads: an initial incumbent (e.g. from a greedy pass);
            ub_quads is a list of 4-tuples. Only strictly better solutions
            replace it.
        node_budget: abort when more search nodes than this are expanded
            (<= 0 means unlimited).

    Enumeration is canonical: the lowest unassigned index anchors each new
    quad, which kills quad-order and within-quad symmetry. Pruning uses
    ``accumulated + remaining_quads * min_remaining_quad_cost`` against the
    incumbent, where the minimum is taken exactly over quads disjoint from
    the assigned items (via one scan of a cost-sorted quad list).

    Returns:
        (best_cost, best_quads, nodes, completed) -- ``completed`` is False
        when the node budget was exhausted; the incumbent is then unproven.
    """
    if n == 0:
        return 0, [], 0, True
    # All quads, cheapest first, with their member bitmasks.
    order = []
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            for l in range(j + 1, n - 1):
                base = (i * n + j) * n + l
                for m in range(l + 1, n):
                    order.append(
                        (
                            cost4[base * n + m],
                            (1 << i) | (1 << j) | (1 << l) | (1 << m),
                            i,
                            j,
                            l,
                            m,
                        )
                    )
    order.sort(key=lambda t: t[0])

    best_cost = ub_cost
    best_quads = list(ub_quads)
    nodes = 0
    completed = True
    full = (1 << n) - 1
    chosen = []

    def min_remaining(used):
        for c, mask, *_ in order:
            if mask & used == 0:
                return c
        return 0

    def descend(used, acc):
        nonlocal best_cost, best_quads, nodes, completed
        if not completed:
            return
        nodes += 1
        if node_budget > 0 and nodes > node_budget:
            completed = False
            return
        if used == full:
            if acc < best_cost:
                best_cost = acc
                best_quads = list(chosen)
            return
        r = n - bin(used).count("1")
        minq = min_remaining(used)
        if acc + (r // 4) * minq >= best_cost:
            return
        anchor = 0
        while used >> anchor & 1:
            anchor += 1
        abit = 1 << anchor
        cands = []
        for j in range(anchor + 1, n - 1):
            if used >> j & 1:
                continue
            for l in range(j + 1, n):
                if used >> l & 1:
                    continue
                base = (anchor * n + j) * n + l
                for m in range(l + 1, n):
                    if used >> m & 1:
                        continue
                    cands.append((cost4[base * n + m], j, l, m))
        cands.sort(key=lambda t: t[0])
        rest = ((r - 4) // 4) * minq
        for c, j, l, m in cands:
            if acc + c + rest >= best_cost:
                break
            chosen.append((anchor, j, l, m))
            descend(used | abit | (1 << j) | (1 << l) | (1 << m), acc + c)
            chosen.pop()
            if not completed:
                return

    descend(0, 0)
    return best_cost, best_quads, nodes, completed
