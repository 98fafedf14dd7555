"""Bundles on the projective line given by gluing matrices, their subbundles,
filtrations and morphisms."""

from .bundle import TwistorBundle, birkhoff, h0, is_pure, splitting_type, validate
from .morphism import (BundleMorphism, conjugacy_constancy, degree_bound_check, morphism_ker_im_coker,
                       morphism_weight_filtration, strong_compat_via_twistor)
from .subbundle import FilteredTwistorBundle, Subbundle, is_mixed_twistor, saturate, sub_intersect, sub_sum

__all__ = ["TwistorBundle", "birkhoff", "h0", "is_pure", "splitting_type", "validate", "BundleMorphism",
           "conjugacy_constancy", "degree_bound_check", "morphism_ker_im_coker", "morphism_weight_filtration",
           "strong_compat_via_twistor", "FilteredTwistorBundle", "Subbundle", "is_mixed_twistor", "saturate",
           "sub_intersect", "sub_sum"]
