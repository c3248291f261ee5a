//! Exact computations for the socle-deformed Koszul self-injective algebras
//! `Lambda_q` on the cyclic double quiver: their structure constants, the
//! Ext algebra `E(Lambda_q)`, its graded centre and the presentation of that
//! centre.

pub mod coeff;
pub mod linalg;
pub mod ext;
pub mod centre;
pub mod structure;
pub mod findim;
pub mod cli;
