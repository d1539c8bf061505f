//! Exact arithmetic in higher-level q-deformed Fock spaces: straightening of
//! q-wedges, the bar involution, canonical bases and the decomposition
//! matrices they define.

pub mod canonical;
pub mod combinatorics;
pub mod error;
pub mod fock;
pub mod laurent;
pub mod theorems;
pub mod wedge;

pub use combinatorics::{
    compare_dominance, compare_index_order, decode, encode, enumerate_block, join_index,
    split_index, Ambient, BlockSpec, Dominance, MultiCharge, MultiPartition, OrderedWedge,
    Partition, TripleCoord,
};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use wedge::{normal_order, straighten_pair, Strategy, WedgeExpansion};
