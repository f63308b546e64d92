//! Exact computation of PBW bases for character Hopf algebras and of the
//! PBW generators of their right coideal subalgebras.
//!
//! The pipeline, bottom to top:
//!
//! * [`coeff`] — the coefficient field: Q(q) or a cyclotomic specialization,
//!   with Gaussian q-binomials;
//! * [`words`] — Lyndon-Shirshov combinatorics over a finite ordered
//!   alphabet: the two word orders, standard words, Shirshov bracketing, and
//!   enumeration of monotonous restricted words;
//! * [`skewalg`] — the free character Hopf algebra G<X>: normal-form
//!   elements, skew commutators, super-letter values, and the coproduct;
//! * [`pbwengine`] — quotients by homogeneous relations: degree-bounded
//!   completion, hard super-letters with heights, PBW decompositions, and
//!   replacement bases built from thin elements;
//! * [`coideal`] — right coideal subalgebras containing the group: closure,
//!   validation, extraction of PBW generators, and the membership test;
//! * [`cli`] — the presentation file format, commands, and reports.

pub mod cli;
pub mod coeff;
pub mod coideal;
pub mod pbwengine;
pub mod skewalg;
pub mod words;
