pub mod zmod;
pub mod grp;
pub mod burnside;
pub mod mackey;
pub mod kan;
pub mod mates;
pub mod family;
pub mod adams;
