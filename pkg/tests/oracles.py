"""Independent reference implementations used by the tests.

Nothing here imports the package under test except for plain data types.
Group elements are identified through the faithful Tits representation of a
right-angled Coxeter group: generator i acts on Z^n by
alpha_j -> alpha_j - 2 B(i, j) alpha_i with B(i, i) = 1, B(i, j) = -1 when i and
j do not commute and 0 when they do.
"""

from collections import deque
from itertools import product


def tits_generators(n, commute):
    gens = []
    for i in range(n):
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        for j in range(n):
            if j == i:
                m[i][j] = -1
            elif not commute(i, j):
                m[i][j] = 2  # coefficient of alpha_i in the image of alpha_j
        gens.append(tuple(tuple(row) for row in m))
    return gens


def matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n))


def column(m, j):
    return tuple(row[j] for row in m)


def positive(root):
    return root if any(x > 0 for x in root) else tuple(-x for x in root)


class CayleyBall:
    """BFS ball of radius R in the Cayley graph, with edges and wall data.

    ``walls[v]`` is the set of positive roots crossed on a geodesic from the
    identity to v, i.e. the walls separating v from the identity.
    """

    def __init__(self, n, commute, radius):
        self.n = n
        self.gens = tits_generators(n, commute)
        ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
        self.identity = ident
        self.dist = {ident: 0}
        self.walls = {ident: frozenset()}
        self.step = {}
        frontier = [ident]
        for r in range(1, radius + 1):
            nxt = []
            for g in frontier:
                for s, m in enumerate(self.gens):
                    h = matmul(g, m)
                    self.step[(g, s)] = h
                    if h not in self.dist:
                        self.dist[h] = r
                        self.walls[h] = self.walls[g] | {positive(column(g, s))}
                        nxt.append(h)
            frontier = nxt
        self.radius = radius

    def walk(self, word, start=None):
        g = self.identity if start is None else start
        for s in word:
            nxt = self.step.get((g, s))
            if nxt is None:
                nxt = matmul(g, self.gens[s])
            g = nxt
        return g

    def edge_root(self, g, s):
        return positive(column(g, s))

    def sphere_sizes(self):
        counts = [0] * (self.radius + 1)
        for d in self.dist.values():
            counts[d] += 1
        return counts


def all_words(n, max_len):
    for k in range(max_len + 1):
        yield from product(range(n), repeat=k)


def closure_order(gens, limit=5000):
    """Order of a permutation group by exhaustive closure (tuples, left-to-right products)."""
    if not gens:
        return 1
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[i] for i in p)
            if q not in seen:
                seen.add(q)
                if len(seen) > limit:
                    raise ValueError("group too large for closure")
                queue.append(q)
    return len(seen)


def components_union_find(vertices, edges):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def in_hull_oracle(ball, seeds, x):
    """x lies in the convex hull of seeds iff every wall separating x from a seed
    has some seed on x's side."""
    wx = ball.walls[x]
    w0 = ball.walls[seeds[0]]
    for beta in wx ^ w0:
        side = beta in wx
        if not any((beta in ball.walls[s]) == side for s in seeds):
            return False
    return True


def matvec(m, v):
    return tuple(sum(m[r][k] * v[k] for k in range(len(v))) for r in range(len(m)))


def parabolic_elements(ball, gens, radius):
    """Tits matrices of the special subgroup on ``gens``, up to word length ``radius``."""
    out = {ball.identity}
    frontier = [ball.identity]
    for _ in range(radius):
        frontier = [h for g in frontier for s in gens if (h := matmul(g, ball.gens[s])) not in out]
        out.update(frontier)
    return out


def core_oracle(ball, parabolic, deleted_roots, subgroup_radius=12):
    """Membership test for the core cut out by every wall except those meeting the
    special subgroup W_T and the subgroup orbits of the deleted walls."""
    hs = parabolic_elements(ball, parabolic, subgroup_radius)
    allowed = {positive(matvec(h, column(ball.identity, t))) for h in hs for t in parabolic}
    allowed |= {positive(matvec(h, beta)) for h in hs for beta in deleted_roots}

    def member(x):
        return ball.walls[x] <= allowed

    return member
