//! Core algorithms for finite fragments of Cayley complexes: word problems,
//! balls, cell complexes, exact minimal fillings and Dehn tables, coned-off
//! Cayley graphs and combings, and bar-complex chains.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod barchain;
pub mod budget;
pub mod cayley;
pub mod combing;
pub mod complex;
pub mod coned;
pub mod filling;
pub mod words;
