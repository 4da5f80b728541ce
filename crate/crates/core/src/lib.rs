pub mod algebra;
pub mod classifier;
pub mod cochain;
pub mod error;
pub mod extension;
pub mod field;
pub mod io;
pub mod linalg;
pub mod mc;
pub mod nonabelian;
pub mod split;
