//! Learning in the limit from informants over ultimately periodic languages.
//!
//! The crate simulates learners under the interaction operators G, Psd, Sd
//! and It, checks learning restrictions on finite horizons, implements the
//! standard learner transformations and replays separation arguments as
//! adversaries that produce checkable witnesses.

pub mod adversary;
pub mod catalog;
pub mod combinators;
pub mod evidence;
pub mod harness;
pub mod hypothesis;
pub mod interaction;
pub mod restrictions;
pub mod upset;

pub use evidence::{DataSequence, DataSet, Example, Informant, Labeled};
pub use hypothesis::{Hypothesis, Label};
pub use interaction::{run, HypSequence, Interface, Learner};
pub use restrictions::{check, Restriction, Verdict};
pub use upset::{Relation, UpSet};
