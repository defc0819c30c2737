#![allow(dead_code)]

pub mod corpus;
pub mod ilin;
pub mod oracle;
pub mod sfp;
