"""torusroots: exact enumeration of pairs of roots of unity on Mobius
graph curves in the two-torus, with uniform bounds and distribution tables.
"""

from .cyclotomic import (
    LEVEL_CAP,
    CycloNum,
    GaloisMap,
    LevelCapError,
    RootOfUnity,
    as_root_of_unity,
    conductor_reduce,
    cyc_arith,
    cyclotomic_polynomial,
    euler_phi,
    galois_apply,
)
from .curves import (
    ConjugateFamily,
    MinimalTranslate,
    MobiusMap,
    RankOneError,
    TorusCurve,
    conjugate_family,
    graph_curve,
    minimal_translate,
    mobius_new,
    preserves_roots_of_unity,
    translate_curve,
)
from .polytope import (
    LatticeInfo,
    LatticePolytope,
    area,
    difference_lattice,
    minkowski_sum,
    newton,
    support,
    toric_bezout_bound,
)
from .torsion import (
    BoundReport,
    CommonComponentError,
    ConjugacyWitness,
    DistributionTable,
    EnumerationResult,
    InfiniteWitness,
    IntersectionResult,
    MemberDistribution,
    TorsionPoint,
    UnsupportedIntersectionError,
    bound_torsion,
    brute_force_torsion,
    conjugacy_witness,
    conjugacy_witness_image,
    distribute,
    enumerate_torsion,
    intersect,
)

__version__ = "0.1.0"
