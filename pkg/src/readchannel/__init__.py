"""Read channels: capacity values, exhaustive counts and state-graph tools."""
from .core import (
    BitMatrix,
    BudgetError,
    ChannelParams,
    NumericError,
    ParameterError,
    RangeError,
    Word,
    submatrix,
    subvector,
    weight,
)
from .channel import read_matrix, read_vector
from .enumerate import count_read_matrices, count_read_vectors
from .spectral import (
    CapacityBounds,
    CapacityValue,
    capacity_closed_form,
    constraint_capacity,
    perron_eigenvalue,
    qary_capacity,
)
from .twodim import Params2D, capacity_2d

__all__ = [
    "BitMatrix",
    "BudgetError",
    "CapacityBounds",
    "CapacityValue",
    "ChannelParams",
    "NumericError",
    "Params2D",
    "ParameterError",
    "RangeError",
    "Word",
    "capacity_2d",
    "capacity_closed_form",
    "constraint_capacity",
    "count_read_matrices",
    "count_read_vectors",
    "perron_eigenvalue",
    "qary_capacity",
    "read_matrix",
    "read_vector",
    "submatrix",
    "subvector",
    "weight",
]
