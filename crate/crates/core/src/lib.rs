//! d-cuts of undirected graphs: red-blue d-colourings, exact solvers for
//! graphs of diameter at most 2, P5-free and (P3+P4)-free graphs, a brute
//! force oracle, and the two hardness gadgets.

pub mod colouring;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod solvers;
