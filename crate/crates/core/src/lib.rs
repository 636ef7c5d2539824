pub mod choice;
pub mod colouring;
pub mod error;
pub mod exec;
pub mod family;
pub mod graph;
pub mod io;
pub mod options;
pub mod oracle;
pub mod reduction;
pub mod symmetry;
pub mod transfer;
pub mod verify;
