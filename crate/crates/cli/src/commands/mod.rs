pub mod audit;
pub mod compute;
pub mod figure1;
pub mod trp;
pub mod zero_paths;
