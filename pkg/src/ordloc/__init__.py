"""Finite ordered topological spaces, ordered locales, and their dualities."""

from .errors import InvariantError, PreconditionError, SchemaError
from .preorders import Preorder, is_monotone_fn, iter_bits, mask_of
from .spaces import FinSpace, OrderedSpace, interval_topology, upper_topology
from .frames import (FinFrame, FrameHom, Nucleus, PointFilter,
                     double_negation_nucleus, frame_of_opens, has_enough_points,
                     identity_nucleus, is_frame_hom, nucleus_fixpoints,
                     open_nucleus, points_of_frame)
from .locales import (LocaleMap, OrderedLocale, check_axiom_v, compose_maps,
                      equality_order, identity_map, inclusion_order,
                      is_lower_monotone, is_monotone, is_monotone_via_cones,
                      is_upper_monotone, sublocale_order, total_order)
from .duality import (CounitResult, OrderFlavour, O_map, O_space, PtSpace,
                      UnitResult, check_triangle_identities, counit,
                      duality_report, pt_locale, pt_map, satisfies_axiom_p,
                      unit)
from .esakia import (HeytingAlg, clopen_upsets, esakia_roundtrip,
                     esakia_roundtrip_space, is_bi_esakia, is_co_esakia,
                     is_esakia, is_priestley, prime_filter_space)

__all__ = [name for name in dir() if not name.startswith("_")]
