pub mod kron;
