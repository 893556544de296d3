//! Ritz variational engine for nonlinear differential equations, with exact
//! solutions and brute-force oracles for the classic test problems: the
//! Bratu fold, nth-order reaction kinetics, the KdV soliton, the Lambert
//! equation and the Duffing potential.

pub mod numerics;
pub mod specfun;
pub mod ritz;
pub mod kinetics;
pub mod bratu;
pub mod classic;
pub mod oracle;
