class UnionFind:
    """
    Disjoint sets over hashable items, deterministic in insertion order.

    The representative of a class is always the member that was added first,
    so quotients computed from the same input list come out identical.

    >>> uf = UnionFind(["a", "b", "c"])
    >>> uf.union("c", "b")
    >>> uf.find("c")
    'b'
    >>> uf.classes()
    [['a'], ['b', 'c']]
    """

    def __init__(self, items=()):
        self.parent = {}
        self.order = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.order[x] = len(self.order)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.order[rx] < self.order[ry]:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry

    def collapse(self):
        items = list(self.parent)
        for x in items[1:]:
            self.union(items[0], x)

    def representatives(self):
        return [x for x in self.parent if self.find(x) == x]

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())
