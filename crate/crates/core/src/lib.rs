pub mod absolute;
pub mod cambrian;
pub mod coxeter;
pub mod geometry;
pub mod numfield;
pub mod sbdw;
