//! Finite simplicial sets in Eilenberg–Zilber normal form.

mod category;
mod complex;
mod json;
mod maps;
mod product;
mod pushout;
mod simplex;
mod standard;

pub use category::{nerve, CategoryJson, FinCategory, Morphism, MorphismJson, Nerve};
pub use complex::{binomial, opposite_ref, uniquify, FiniteSimplicialSet};
pub use json::{RefJson, SSetJson};
pub use maps::{find_isomorphism, is_isomorphic, sset_hom, MapSearch, SimplexIndex, SimplicialMap};
pub use product::{product, Product};
pub use pushout::{pushout, Pushout};
pub use simplex::{codegeneracy, coface, collapses, epi_mono, is_monotone, monotone_maps, surjection_from_collapses, GenId, Operator, SimplexRef};
pub use standard::{
    boundary, collapsed_k, collapsed_k_core_edge, coproduct, from_vertex_sets, horn, join, left_cone, point, seq_label, simplex, simplex_subcomplex, standard,
    Standard,
};
