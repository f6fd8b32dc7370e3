//! Exact commutative algebra over F2 and the syzygy orders of big chain and
//! polygon spaces.
//!
//! The bottom layer is a small computer-algebra kernel: polynomials over
//! `F2[t1, ..., tr]` with XOR-set term arithmetic ([`ring`]), Groebner bases
//! of submodules of graded free modules, kernels, free resolutions, Hilbert
//! series and fraction-free rank ([`module`]), and on top of that the exact
//! syzygy order of a finitely presented module via the Auslander transpose
//! ([`homology`]). Koszul complexes ([`koszul`]) provide independent ground
//! truth for all of it.
//!
//! The top layer ([`chainspace`]) builds the equivariant-cohomology modules
//! of the big chain spaces cut out of sphere products by generic hyperplanes:
//! subset calculus on exact rational length vectors, the closed-form module
//! presentations, the connecting matrix between the long and short halves,
//! and full verdict reports with the maximal-order classification.
//!
//! Most capabilities have a runnable demo under `examples/`; the `polysyz`
//! binary exposes reports, chamber sweeps, and the built-in reference tables
//! on the command line.

pub mod cancel;
pub mod chainspace;
pub mod cli;
pub mod homology;
pub mod koszul;
pub mod module;
pub mod ring;
pub mod selftest;
pub mod subset;

pub use cancel::{CancelToken, Cancelled};
pub use chainspace::{ChainSpaceParams, LengthVector, SyzygyReport};
pub use homology::{syzygy_order, SyzygyOrder};
pub use module::{FreeModule, ModuleElem, ModuleMap, Presentation};
pub use ring::{Monomial, Polynomial, RingCtx, TermOrder};
pub use subset::SubsetIndex;
