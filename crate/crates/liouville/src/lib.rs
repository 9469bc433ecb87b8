pub mod partitions;
pub mod poly;
pub mod verma;
