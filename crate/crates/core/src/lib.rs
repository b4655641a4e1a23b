pub mod coverings;
pub mod dring;
pub mod fgl;
pub mod qring;
pub mod series;
