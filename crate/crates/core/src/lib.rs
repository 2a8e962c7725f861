//! First-order logic with a "being a thesis" operator `[]`.
//!
//! `[]A` holds when `A` holds at every world under every valuation, so it is
//! rigid: its truth value is the same everywhere in a structure. The crate
//! provides the syntax and a text format ([`frontend`]), finite Kripke
//! structures with variable domains ([`kripke`]), conversion to conjunctive
//! form ([`normalform`]), a first-order oracle for the monadic fragment with
//! identity ([`oracle`]), the thesis-hood decision procedure built on it
//! ([`decider`]) and a checker for Hilbert-style derivations
//! ([`proofcheck`]).
//!
//! ```
//! use folbox::{is_thesis, parse_formula};
//!
//! let a = parse_formula("[]P(x) -> forall x. P(x)").unwrap();
//! assert!(is_thesis(&a).unwrap());
//! let b = parse_formula("[]P(x)").unwrap();
//! assert!(!is_thesis(&b).unwrap());
//! ```

pub mod decider;
pub mod frontend;
pub mod gen;
pub mod kripke;
pub mod normalform;
pub mod oracle;
pub mod proofcheck;
pub mod syntax;

pub use decider::{box_status, decide, elem_disj_thesis, is_thesis, BoxStatus, DecideError, Decision};
pub use frontend::{parse_formula, print_formula, DocError, ParseError};
pub use kripke::{Countermodel, KripkeError, Structure, Valuation, WorldId};
pub use normalform::{recognize, to_conjunctive_form, ConjunctiveForm, ElementaryDisjunction};
pub use oracle::{is_fol_thesis, is_satisfiable, ClassicalVerdict, OracleError, Status};
pub use proofcheck::{check_proof, match_axiom, Derivation, LineVerdict, Rule};
pub use syntax::{Formula, PredSym, Var};
