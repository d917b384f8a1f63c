//! The coherent nerve: mapping posets of `C[Δⁿ]`, mapping complexes of
//! `C[S]`, thin-generated markings, and the scaled nerve.

mod closure;
mod hom;
mod nerve;
mod poset;

pub use closure::{marked_closure, CoherentMarking};
pub use hom::{concat, hom_complex, hom_complex_map, hom_dimension_bound, push_atom, reduce_string, reduced_strings, Atom, AtomString, HomComplex};
pub use nerve::{scaled_nerve, MarkedSimpCategory, NerveSimplex, ScaledNerve};
pub use poset::{bits, compose_union, interval, mapping_poset, mask_of, CubeNerve, MappingPoset, Subset};
