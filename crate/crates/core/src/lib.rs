//! Exact arithmetic for branching rules of splint root systems.

#![allow(clippy::needless_range_loop)]

pub mod branch;
pub mod chars;
pub mod rootsys;
pub mod rules;
pub mod schur;
pub mod tables;
pub mod weightlat;
