//! Young functions, Orlicz norms on atomic measure spaces, composition
//! operators, and finite-horizon evidence for Li-Yorke chaos criteria.

pub mod chaos;
pub mod commands;
pub mod demo;
pub mod dynamics;
pub mod numeric;
pub mod orlicz;
pub mod report;
pub mod space;
pub mod system;
pub mod young;
