"""Tensor products of posets with families of subsets, and the quantales they carry.

Relations are integer bitmasks: pair ``(a, b)`` of a ``p x q`` grid is bit
``a * q + b``.  Tensors are lower relations closed under the rectangle
operator ``t``; their lattice carries the product ``R (.) S``, the least
tensor containing the relation product.
"""

from .closure import ClosureSpace, principal_ideal_space
from .completions import AugmentedPoset
from .order import Poset
from .quantale import FiniteQuantale, SpaceQuantale, TensorQuantale, odot, relation_product
from .tensor import BASES, GuardExceeded, SpaceProduct, TensorBase, TensorError, TensorFamily

__version__ = "0.1.0"

__all__ = [
    "Poset", "ClosureSpace", "principal_ideal_space", "AugmentedPoset", "TensorBase",
    "TensorFamily", "SpaceProduct", "BASES", "GuardExceeded", "TensorError", "TensorQuantale",
    "SpaceQuantale", "FiniteQuantale", "odot", "relation_product", "__version__",
]
