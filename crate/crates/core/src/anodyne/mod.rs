//! Scaled-anodyne and pattern-anodyne generators, extension search, prism
//! filtrations, the scaled slice, fibered-object checks and flatness.

mod extension;
mod fibered;
mod filtration;
mod flat;
mod generators;
mod grid;
mod slice;

pub use extension::{bicategory_instances, extension_exists, extensions, is_weak_bicategory, BicatWitness};
pub use fibered::{is_cocartesian, is_pattern_fibered, FiberWitness};
pub use filtration::{carpal, preperc, swww, verify_filtration, Filtration, FiltrationCertificate, FiltrationStep, Region, StepRecord};
pub use flat::{double_slice_fiber, is_flat_over_triangle};
pub use generators::{delta_map, pattern_generator, scaled_generator, DecoratedMap, GeneratorKind, PatternSpec};
pub use grid::Grid;
pub use slice::{hom_via_slice, scaled_slice, ScaledSlice};
