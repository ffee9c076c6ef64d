//! Drinfel'd twists of Witt-type Lie algebras and their quantizations, with
//! exact arithmetic over the rationals and prime fields.

pub mod cli;
pub mod liealg;
pub mod ring;
pub mod twist;
pub mod uea;
pub mod verify;
