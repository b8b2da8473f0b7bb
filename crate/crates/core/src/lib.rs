pub mod cf;
pub mod genus0;
pub mod gjns;
pub mod poly;
