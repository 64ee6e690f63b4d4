//! Generalized concatenated codes with multi-trial decoding.
//!
//! The code family stacks several Reed-Solomon rows over GF(2^m) and encodes
//! each column of the stack with a nested binary inner code, so that deeper
//! rows see stronger inner protection. Decoding proceeds level by level:
//! inner decoders propose column symbols, an erasure threshold turns shaky
//! proposals into erasures, and the outer decoder runs once per threshold in
//! a maximal threshold set. Rows with weak outer codes can be grouped and
//! decoded jointly as interleaved Reed-Solomon codes, which buys back outer
//! distance that grouping gives up.
//!
//! The `thresholds` module carries the erasure-threshold calculus itself:
//! threshold sets, the guaranteed decoding bounds they induce, and an
//! adversarial oracle that certifies those bounds on small parameters.

pub mod channel;
pub mod galois;
pub mod gc;
pub mod thresholds;
pub mod inner;
pub mod interleaved;
pub mod reed_solomon;

pub use channel::{CampaignStats, ChannelError, DecoderKind, ErrorSpec, Placement};
pub use galois::{Field, FieldError, Symbol};
pub use gc::{
    AttemptLog, BitMatrix, DecodeReport, GcCode, GcError, GroupPlan, GroupSpec, IterationReport,
    IterationStatus,
};
pub use inner::{InnerCodeError, InnerDecodeOutcome, NestedBinaryCode};
pub use interleaved::{IrsCode, IrsDecodeOutcome, IrsError};
pub use reed_solomon::{RsCode, RsDecodeOutcome, RsError};
