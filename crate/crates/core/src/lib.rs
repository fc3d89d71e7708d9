//! Tietze simplification of finitely presented groups.
//!
//! The core operation replaces part of a relator by a shorter equivalent
//! read off another relator. Three levels decide how much work a pass does:
//!
//! * [`skip`] picks which relator pairs are searched at all;
//! * [`matching`] decides quickly whether a pair yields a replacement;
//! * [`engine`] performs replacements, eliminations and the pass loop.
//!
//! ```
//! use tietze::{engine::{simplify, EngineConfig}, Presentation};
//!
//! let mut p: Presentation = "gens 2\nrelw abAB\nrelw aa\n".parse().unwrap();
//! let stats = simplify(&mut p, &EngineConfig::default()).unwrap();
//! assert!(p.total_length() <= 6);
//! assert!(stats.passes >= 1);
//! ```

pub mod engine;
pub mod generate;
pub mod matching;
pub mod presentation;
pub mod report;
pub mod skip;
pub mod verify;
pub mod words;

pub use presentation::{ParseError, Presentation, RelatorId, RelatorRecord};
pub use words::{Involutions, Symbol, Word, WordError};
