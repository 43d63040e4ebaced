"""Exact computations on noncommutative tori are bounded by a handful of size limits.

Most operations are exact and unbounded in principle, but a few of them iterate (matrix orders), search
(partition certificates) or eliminate on matrices whose size grows like a binomial coefficient (exterior
powers). This module defines the configuration object that carries those limits so that every bounded
computation can report which limit it hit.

"""
from pyrsistent import PRecord, field


class ToolkitConfig(PRecord):
    """A configuration for bounded exact computations.

    Attributes
    ----------
    order_cap : int
        Max exponent tried by ``matrix_order`` before reporting that the order exceeds the cap. Default is 10000.
    partition_degree_bound : int
        Max dimension d accepted by ``partition_search``. Default is 24.
    exact_kernel_cap : int
        Max size of an exterior power whose fixed rank is found by rational elimination. Larger exterior powers
        use elimination modulo ``modulus``. Default is 128.
    kernel_check_cap : int
        Max size of an exterior power for which the kernel method runs at all. Above it only the averaged trace
        formula is used. Default is 1024.
    modulus : int
        Prime used for modular kernel dimensions. Must exceed ``kernel_check_cap``. Default is 2^31 - 1.
    parallelism : int
        Number of processes used to compute per-degree fixed ranks. Default is 1 (no worker pool).

    """

    order_cap = field(type=int, initial=10000, mandatory=True)
    partition_degree_bound = field(type=int, initial=24, mandatory=True)
    exact_kernel_cap = field(type=int, initial=128, mandatory=True)
    kernel_check_cap = field(type=int, initial=1024, mandatory=True)
    modulus = field(type=int, initial=2147483647, mandatory=True)
    parallelism = field(type=int, initial=1, mandatory=True)

    __invariant__ = lambda r: (
        (r.order_cap > 0, "order_cap must be positive"),
        (r.modulus > r.kernel_check_cap, "modulus must exceed kernel_check_cap"),
        (r.parallelism > 0, "parallelism must be positive"),
    )


DEFAULT_CONFIG = ToolkitConfig()
