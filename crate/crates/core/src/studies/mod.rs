pub mod config;
pub mod run;
pub mod table;

pub use config::{Study, StudyConfig};
pub use run::run_study;
pub use table::{Cell, Table};
