pub mod bundle;
pub mod diagram;
pub mod homology;
pub mod pipeline;
pub mod seifert;
pub mod surgery;
pub mod fixtures;
