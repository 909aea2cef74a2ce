//! Finite groups that violate iterated (Engel-type) identities, found by
//! periodic-point search for verbal maps on `SL(2)` over finite fields,
//! together with the polynomial and finite-field machinery behind the
//! construction.

pub mod freegroup;
pub mod gfield;
pub mod polyring;
pub mod symbolic;
pub mod dynamics;
pub mod certsearch;
