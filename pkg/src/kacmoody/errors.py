"""Exception classes shared across the package."""


class KacMoodyError(Exception):
    """Base class for every error raised by this package."""


# -- matrix input -----------------------------------------------------------

class CartanError(KacMoodyError, ValueError):
    """Raw input is not a generalized Cartan matrix."""


class NotSquare(CartanError):
    pass


class DiagonalNotTwo(CartanError):
    def __init__(self, i, value):
        self.i = i
        self.value = value
        super().__init__(f"a[{i}][{i}] = {value}, expected 2")


class PositiveOffDiagonal(CartanError):
    def __init__(self, i, j, value):
        self.i, self.j = i, j
        self.value = value
        super().__init__(f"a[{i}][{j}] = {value} is positive")


class ZeroPairingViolated(CartanError):
    def __init__(self, i, j, value, mirror):
        self.i, self.j = i, j
        super().__init__(
            f"a[{i}][{j}] = {value} but a[{j}][{i}] = {mirror}; "
            "zero entries must come in symmetric pairs")


class UnknownFamily(KacMoodyError, ValueError):
    pass


class RankOutOfRange(KacMoodyError, ValueError):
    pass


class RankCapExceeded(KacMoodyError):
    def __init__(self, rank, cap):
        self.rank, self.cap = rank, cap
        super().__init__(f"rank {rank} exceeds the configured cap {cap}")


class NotSymmetrizable(KacMoodyError):
    """Raised by :func:`kacmoody.cartan.symmetrize`.

    ``cycle`` is a closed walk ``i1 -> i2 -> ... -> ik -> i1``;
    ``forward`` and ``backward`` are the two directed products along it.
    """

    def __init__(self, cycle, forward, backward):
        self.cycle = tuple(cycle)
        self.forward = forward
        self.backward = backward
        super().__init__(
            f"cycle {self.cycle}: forward product {forward} != "
            f"backward product {backward}")


# -- series -----------------------------------------------------------------

class NotInZ1(KacMoodyError, ValueError):
    def __init__(self, c0):
        self.c0 = c0
        super().__init__(f"constant term is {c0}, expected 1")


class NonUnitConstantTerm(KacMoodyError, ValueError):
    def __init__(self, c0):
        self.c0 = c0
        super().__init__(f"constant term {c0} is not invertible over the integers")


class NonIntegerResult(KacMoodyError, ArithmeticError):
    pass


# -- growth series ----------------------------------------------------------

class MemoryBudgetExceeded(KacMoodyError):
    pass


class NonCanonicalDecomposition(KacMoodyError):
    pass


# -- cohomology -------------------------------------------------------------

class OddSupport(KacMoodyError, ValueError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"nonzero coefficient in odd degree {degree}")


class NotIndefinite(KacMoodyError):
    pass


class NotIndecomposable(KacMoodyError):
    pass


class NegativeRank(KacMoodyError, ArithmeticError):
    def __init__(self, k, value):
        self.k, self.value = k, value
        super().__init__(f"computed i_{k} = {value} < 0")
