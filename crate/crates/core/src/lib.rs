pub mod exactla;
pub mod cda;
pub mod jordan;
pub mod titslie;
pub mod liean;
pub mod serial;
pub mod squares;
pub mod props;
