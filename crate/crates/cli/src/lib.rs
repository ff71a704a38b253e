//! Commands behind the `augment` binary. Each writes its output to any
//! [`std::io::Write`] so that it can be exercised without a process.

pub mod audit;
pub mod generate;
pub mod grid;
pub mod source;
pub mod table;
pub mod trace;
pub mod verify;
