//! Finite polarities, Galois connections, Heyting frames and MacNeille
//! completions, checked exhaustively at small sizes.

pub mod catalogue;
pub mod format;
pub mod frame;
pub mod macneille;
pub mod order;
pub mod polarity;

pub use frame::{frame_plus, FramePlus, HeytingFrame};
pub use macneille::{density_check, macneille, regularity_check, Completion, Density, Embedding, Mode};
pub use order::{HeytingAlgebra, Lattice, Poset};
pub use polarity::{concept_lattice, Bits, ClosedSetLattice, Polarity, Side};
