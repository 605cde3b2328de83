pub mod checks;
pub mod golden;
