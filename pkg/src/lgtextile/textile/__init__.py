from .decode import (
    Decoder, apply_phi_T, build_decoder, check_nondegenerate, expansion_report, lift_path, require_decoder)
from .system import (
    TextileLayer, TextileSystem, build_lr_textile, canonical_form, check_commuting_squares, describe,
    dual_textile, j_maps, textile_higher_block, validate_textile)
from .weave import (
    PatchShifter, WeavePatch, enumerate_patches, extend_patch, extract_bias_word, hat_to_check,
    rectangle, shift_patch, triangle, validate_patch)
