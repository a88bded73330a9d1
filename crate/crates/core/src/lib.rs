pub mod corpus;
pub mod cycles;
pub mod field;
pub mod forms;
pub mod mixedcx;
pub mod perm;
pub mod verify;
