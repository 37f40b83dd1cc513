pub mod error;
pub mod sl2;
pub mod word;
pub mod torus;
pub mod covers;
pub mod resfin;
pub mod genus2;
