"""Relational complexity of finite permutation groups."""

__version__ = "0.1.0"

from .perm import (  # noqa: E402
    BlockSystem,
    Permutation,
    PermGroup,
    StabilizerChain,
    are_conjugate_tuples,
    compose,
    group_order,
    is_primitive,
    is_transitive,
    orbit,
    point_stabilizer,
)
from .tuples import OrbitIndex, fingerprint, index_injective_k_tuples, k_equivalent  # noqa: E402
from .complexity import (  # noqa: E402
    ComplexityCertificate,
    NonBinarityWitness,
    Verdict,
    is_binary,
    k_determines_n,
    lift_witness_to_product,
    relational_complexity,
)
from .constructions import (  # noqa: E402
    GroupDescriptor,
    QuadraticForm,
    affine_orthogonal,
    cyclic_regular,
    diagonal_type,
    natural_alternating,
    natural_symmetric,
    petersen_group,
    product_action,
    project_components,
    semidirect_regular,
)
