pub mod factor;
pub mod natural;
pub mod published;
pub mod puzzle;
pub mod repetition;
pub mod sequences;
pub mod transcript;
