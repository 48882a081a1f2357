//! Command-line front end: game files, the solver subcommands, CSV sweeps
//! and the verification suite.

pub mod gamefile;
pub mod verify;

mod commands;

pub use commands::{run, EXIT_FAILURE, EXIT_OK, EXIT_UNCERTIFIED};
pub use gamefile::{parse_game_file, serialize_game, GameFileError};
