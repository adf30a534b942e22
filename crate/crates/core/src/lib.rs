pub mod cli;
pub mod error;
pub mod fock;
pub mod hermite2;
pub mod nfm;
pub mod pol_phase;
pub mod quad;
pub mod rs_field;
mod special;
pub mod xi_rep;
