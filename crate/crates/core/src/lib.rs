pub mod cli;
pub mod exactalg;
pub mod jordan;
pub mod jrep;
pub mod pluriharm;
pub mod sample;
pub mod sbdo;
pub mod verify;
