pub mod braid;
pub mod catalog;
pub mod coloring;
pub mod extension;
pub mod format;
pub mod group;
pub mod perm;
pub mod permgroup;
pub mod psi;
pub mod quandle;
pub mod sweep;
