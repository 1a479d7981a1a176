"""temperlab: a desk-scale laboratory for Temperleyan polyomino combinatorics.

Exact Kasteleyn/Laplacian determinants, coupling functions and their Green's
function identities, limiting conformal coupling functions, delta-normalized
Dirichlet energies, and loop-erased random walk exponent experiments.
"""

from .region import (GridSubgraph, TemperleyanPolyomino, RectilinearPolygon,
                     temperleyan_from_subgraph, approximate_polygon,
                     boundary_turning, cell_class, is_black,
                     NotSimplyConnected, BaseNotOnBoundary, EpsTooLarge,
                     PointNotOnBoundary)
from .kasteleyn import (KasteleynMatrix, HoleSpec, build_kasteleyn,
                        count_tilings_exact, log_count_tilings,
                        kasteleyn_with_holes, enumerate_tilings,
                        full_adjacency, default_flip_path, UnbalancedColors,
                        CapExceeded, InvalidPath, CellMissing)
from .treelap import (LaplacianMatrix, RectangleSpec, spanning_tree_count,
                      verify_temperley, rectangle_log_trees,
                      rectform_expansion, catalan_constant, dedekind_eta,
                      tree_count_deletion_contraction, Disconnected,
                      DomainError)
from .coupling import (CouplingMatrix, DiscreteGreens, DualGreens, HeightField,
                       coupling_matrix, local_probability, discrete_greens,
                       dual_greens, coupling_via_greens, height_function,
                       average_height, ColorMismatch, NonAdjacentPair,
                       InconsistentTiling)
from .conformal import (ModelDomainMap, JetCoefficients, TwoHoleSpec,
                        f_plus, f_minus, transport, limiting_height,
                        schwarzian_sqrt, pq_from_jet, pq_jet, fpq_value,
                        fpq_prime, fpq_energy_delta, fpq_flow,
                        fpq_cut_energy_rate, schwarzian_pq,
                        cut_boundary_energies, cut_step_rate,
                        lemma_cut_constant, elbow_domain, elbow_jet,
                        two_hole_coupling, lerw_ratio_law,
                        lerw_point_probability, domain_map, f_plus_star,
                        PoleAt, BranchCutHit, PathThroughSingularity, ZeroB,
                        DegenerateParameters)
from .energy import (HarmonicField, EnergyReport, solve_height,
                     dirichlet_energy_delta, corner_law_fit,
                     corner_law_coefficient, rectangle_energy_closed_form,
                     main2_assemble, corollary_laplacian, remark6_identities,
                     expansion_coefficients, field_from_function,
                     MeshTooCoarse, DeltaTooSmall, InsufficientDeltas)
from .lerw import (TreeSample, LerwPath, ExponentFit, sample_ust, loop_erase,
                   branch, lerw_between, two_hole_bijection_check,
                   growth_exponent, angular_profile, ratio_experiment,
                   two_hole_log_ratio, spanning_trees_of,
                   InsufficientSamples, VertexMissing, HoleColorMismatch,
                   BNotOnBoundary)
from .slitgreens import (SlitBox, SlitField, slit_greens, fn_construction,
                         laplacian_residual)

__version__ = "0.1.0"
