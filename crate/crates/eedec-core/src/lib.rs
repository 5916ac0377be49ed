//! Adaptive single-trial error/erasure decoding for binary BCH codes over
//! soft-output memoryless channels.
//!
//! The crate is organised bottom-up:
//!
//! * [`galois`] — GF(2^m) arithmetic and binary polynomials,
//! * [`bch`] — BCH code construction, systematic encoding and a bounded
//!   minimum distance errors-and-erasures decoder,
//! * [`channel`] — BPSK mapping, AWGN transmission, hard decisions and
//!   per-symbol unreliabilities,
//! * [`pgf`] — probability generating functions of the error count among
//!   the non-erased symbols, exact and windowed residual error
//!   probabilities,
//! * [`strategy`] — the adaptive erasing strategies that pick the number
//!   of erasures minimising the residual codeword error probability,
//!   plus errors-only and fixed-erasure baselines.
//!
//! The crate is `no_std` (it allocates through `alloc`); everything that
//! touches the OS — Monte Carlo sweeps, CSV/JSON output, the CLI — lives
//! in the companion `eedec-sim` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bch;
pub mod channel;
pub mod galois;
pub mod pgf;
pub mod strategy;
