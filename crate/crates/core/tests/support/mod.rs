pub mod equivalence;
pub mod laws;
pub mod oracle;
