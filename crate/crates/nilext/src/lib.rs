pub mod tabledsl;
pub mod catalog;
