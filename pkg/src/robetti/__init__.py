"""robetti: refined Betti numbers and resilience analysis for simplicial networks.

Computes thick and cohesive Betti numbers of finite simplicial complexes,
their persistent variants, and attack-resilience six-packs and biparameter
grids, all with exact arithmetic over prime fields.
"""

from .cohomology import (CochainComplexRep, CohomologyBasis, SimplicialMap,
                         betti, coboundary_matrix, cochain_map,
                         cohomology_basis, inclusion_map,
                         induced_map_on_cohomology, poset_betti,
                         poset_cochain_complex, simplicial_cochain_complex)
from .complexes import (Poset, SimplicialComplex, barycentric_subdivision,
                        barycentric_vertex_ids, build_complex,
                        connected_components, coskeleton, face_poset,
                        h_barycentric_subdivision, h_face_poset,
                        lower_adjacent, make_simplex, normalize_strata, star)
from .errors import (CofiltrationAuditError, FacetParseError,
                     InternalConsistencyError)
from .fieldmath import (FpMatrix, SubspaceBasis, image_basis, kernel_basis,
                        quotient_map, rank, restrict_map, solve_in_image)
from .invariants import (CohesiveReport, ThickProfile, cohesive_betti,
                         cohesive_map, cohesive_relation_check,
                         cohesive_report, coskeletal_tower, gamma_dimension,
                         persistent_cohesive_betti, thick_betti,
                         thick_persistent_betti, thick_profile)
from .persistence import (Barcode, BiGrid, Ladder, Tower, barcode,
                          composite_rank, hilbert_function, ladder_cokernel,
                          ladder_image, ladder_kernel, line_restriction)
from .resilience import (Cofiltration, SixPack, attack_random,
                         attack_targeted, cohesive_sixpack, thick_bigrid,
                         thick_sixpack)

__version__ = "0.1.0"
