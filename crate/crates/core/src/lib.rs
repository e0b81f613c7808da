//! Toolkit for linear matrix pencils: spectrahedron analysis for diagonal
//! pencils, constructive matrix Farkas and Positivstellensatz certificates,
//! degree-bounded certificate search and refutation, and verification of all
//! certificates in exact rational arithmetic.

pub mod affine;
pub mod cert;
pub mod engine;
pub mod farkas;
pub mod instances;
pub mod linalg;
pub mod lp;
pub mod mat;
pub mod matpoly;
pub mod pencil;
pub mod region;
pub mod scalar;
pub mod sdp;

pub use affine::{AffineFunctional, Polyhedron};
pub use cert::{Certificate, CertificateDoc, VerificationReport, VerifyMode};
pub use farkas::FarkasCertificate;
pub use linalg::Signature;
pub use mat::{Mat, SymMatrix};
pub use pencil::{LinearPencil, MatrixTuple, Pencil};
pub use region::{RegionClassification, RegionKind};
pub use scalar::Rat;
