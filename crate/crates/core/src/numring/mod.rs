//! Exact arithmetic in Z and in rings of integers of quadratic fields.

mod classgroup;
mod fq;
mod ideal;
mod nf;
mod prime;
mod ring;
mod units;

pub use classgroup::{pic_of_open, IdealClassGroup};
pub use fq::{Fq, ResidueField};
pub use ideal::{factor_element, is_principal, FractionalIdeal};
pub use nf::NfElem;
pub use prime::{PrimeIdeal, Splitting};
pub use ring::{NumberRing, DEFAULT_UNIT_SEARCH_CAP};
pub use units::{s_unit_generators, units_mod_n, UnitGroupModN};

/// Class group of a ring (Z, imaginary or real quadratic).
pub fn class_group(ring: &NumberRing) -> crate::error::Result<IdealClassGroup> {
    ring.class_group()
}
