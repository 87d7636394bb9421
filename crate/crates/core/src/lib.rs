//! Exact trace polynomials and pruned word searches for the generalised
//! triangle groups `⟨x, y | x², y⁴, W(x, y)²⟩`.
//!
//! Words `W = x y^{a(1)} ⋯ x y^{a(k)}` are written as digit strings over
//! `{1, 2, 3}`. Traces are polynomials in `λ = tr(XY)` with coefficients in
//! `ℤ[√2]`, evaluated exactly.

pub mod error;
pub mod filter;
pub mod poly;
pub mod ring;
pub mod search;
pub mod smallcancel;
pub mod trace;
pub mod witness;
pub mod word;

pub use error::{Error, Result};
pub use filter::{complete_from_half, filter_counts, filter_modeight, sums_congruence_check, Verdict};
pub use poly::{classify_form, search_target, target_poly, trinomial_jset, Family, Form, JSet, Poly, TracePoly};
pub use ring::{RootTwo, RootTwoBig, RootTwoInt};
pub use search::{schedule_bound, search_m, search_with, SearchMode, SearchOptions, SearchOutcome, SearchRecord};
pub use smallcancel::{check_c6, enumerate_c6_candidates, max_piece_syllables, PieceReport};
pub use trace::{trace_poly, trace_poly_exact, trace_poly_mod2, ExactTrace};
pub use word::{parse_word, BalancedWord, Word};
