//! Toric resolutions of three-dimensional cyclic quotient singularities.

pub mod ashikaga;
pub mod classify;
pub mod error;
pub mod fan;
pub mod fujiki_oka;
pub mod ghilb;
pub mod hilbert;
pub mod intmat;
pub mod iterated;
pub mod lattice;
pub mod polycone;

pub use ashikaga::{
    remainder_map, remainder_polynomial, ExtFraction, ProperFraction, RemainderTree,
};
pub use classify::{match_class, reid_tai_canonical, ClassLabel};
pub use error::{Error, Result};
pub use fan::{Fan, JuniorStats};
pub use fujiki_oka::{discrepancies, fujiki_oka_resolve, fujiki_oka_traced, DiscrepancyReport};
pub use ghilb::{enumerate_ggraphs, fan_of_g, GFan, GGraph, Monomial};
pub use hilbert::{hilbert_basis, is_hilb_desingularization, HilbVerdict, HilbertBasis};
pub use iterated::{iterated_fo, relattice, resolve_residual, sl_subgroup, Report};
pub use lattice::{GroupAction, Lattice, LatticePoint};
