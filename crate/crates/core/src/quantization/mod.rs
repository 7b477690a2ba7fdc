//! A finite free-fermion model: interval lattices to Clifford algebras,
//! site maps to homomorphisms, site permutations to inner automorphisms with
//! explicit witnesses, and finite-dimensional modular data.

mod car;
mod functor;
mod modular;
mod sites;
mod witness;

pub use car::{bogoliubov, bogoliubov_perm, induced_hom, induced_site_hom, quantize, CarAlgebra, MAX_SITES};
pub use functor::{
    quantize_interval_cell, quantize_site_cell, site_hcompose, two_functor_check, QuantizedCell, SiteCell,
    TwoFunctorReport,
};
pub use modular::{ModularData, KmsReport};
pub use sites::{all_permutations, SiteEmbedding, SitePermutation, SiteSet};
pub use witness::{antihom_check, defect_table, inner_witness, scalar_ratio, AntihomReport, InnerWitness, WitnessCache};
