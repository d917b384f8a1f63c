//! Set-level Segal theory: category objects among simplicial sets, their
//! groupoid cores, and preSegal categories enriched in finite sets.

mod category_object;
mod free;
mod presegal;

pub use category_object::{detect_invertibles_via_k, invertible_core, invertible_edges, is_category_object, is_groupoid_object, to_category, SegalWitness};
pub use free::{adjunction_check, free_category, free_hom, functors, presegal_maps, AdjunctionWitness, FreeCategory, FreeHom, Functor, JObject, PreSegalMap};
pub use presegal::{homotopy_category_presegal, unpre, PreSegalJson, PreSegalSet, SegMapJson, SegValueJson};
