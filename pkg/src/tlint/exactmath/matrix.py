"""Exact matrices stored as one sparse dict per row."""

from __future__ import annotations

from fractions import Fraction


class DimError(ValueError):
    pass


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]
        if len(self.rows) != nrows:
            raise DimError("row count mismatch")

    @classmethod
    def from_dense(cls, data) -> "Matrix":
        data = [list(r) for r in data]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise DimError("ragged rows")
            rows.append({j: x for j, x in enumerate(r) if x})
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int, one=1) -> "Matrix":
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def diagonal(cls, values) -> "Matrix":
        values = list(values)
        return cls(len(values), len(values), [({i: v} if v else {}) for i, v in enumerate(values)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def to_dense(self):
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> list:
        return [r.get(j, 0) for r in self.rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def entries(self):
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                yield i, j, r[j]

    def map(self, fn) -> "Matrix":
        rows = []
        for r in self.rows:
            nr = {}
            for j, x in r.items():
                y = fn(x)
                if y:
                    nr[j] = y
            rows.append(nr)
        return Matrix(self.nrows, self.ncols, rows)

    def transpose(self) -> "Matrix":
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                rows[j][i] = x
        return Matrix(self.ncols, self.nrows, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimError("shape mismatch")
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            r = dict(ra)
            for j, x in rb.items():
                s = r.get(j, 0) + x
                if s:
                    r[j] = s
                else:
                    r.pop(j, None)
            rows.append(r)
        return Matrix(self.nrows, self.ncols, rows)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: x * c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows
        rows = []
        for ra in self.rows:
            acc: dict = {}
            get = acc.get
            for k, a in ra.items():
                for j, b in orows[k].items():
                    acc[j] = get(j, 0) + a * b
            rows.append({j: x for j, x in acc.items() if x})
        return Matrix(self.nrows, other.ncols, rows)

    def apply(self, vec) -> list:
        if len(vec) != self.ncols:
            raise DimError("vector length mismatch")
        out = []
        for r in self.rows:
            acc = 0
            for j, a in r.items():
                if vec[j]:
                    acc = acc + a * vec[j]
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        for ra, rb in zip(self.rows, other.rows):
            if ra.keys() != rb.keys():
                return False
            for j, x in ra.items():
                if not x == rb[j]:
                    return False
        return True

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                r = {}
                for ja, a in ra.items():
                    base = ja * other.ncols
                    for jb, b in rb.items():
                        p = a * b
                        if p:
                            r[base + jb] = p
                rows.append(r)
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    @staticmethod
    def block_diag(*blocks: "Matrix") -> "Matrix":
        rows = []
        off = 0
        total = sum(b.ncols for b in blocks)
        for b in blocks:
            for r in b.rows:
                rows.append({j + off: x for j, x in r.items()})
            off += b.ncols
        return Matrix(len(rows), total, rows)

    def power(self, e: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimError("square matrix required")
        out = Matrix.identity(self.nrows)
        base = self
        while e:
            if e & 1:
                out = out @ base
            e >>= 1
            if e:
                base = base @ base
        return out

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def eval_poly_at_matrix(coeffs, M: Matrix) -> Matrix:
    """Horner evaluation of sum coeffs[i] M^i (coefficients lowest first)."""
    n = M.nrows
    out = Matrix.zeros(n, n)
    for c in reversed(coeffs):
        out = out @ M
        if c:
            out = out + Matrix.identity(n, c)
    return out


def as_fraction_matrix(M: Matrix) -> Matrix:
    return M.map(Fraction)
