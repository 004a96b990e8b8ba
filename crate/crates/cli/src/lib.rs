//! Command implementations behind the `indec` binary.

pub mod commands;
pub mod report;

pub use report::Report;

/// Process exit status for a library error.
pub fn exit_code(e: &indec_core::Error) -> i32 {
    use indec_core::Error;
    match e {
        Error::NotSquarefree(_) | Error::InvalidInput(_) | Error::FieldMismatch => 2,
        Error::BudgetExceeded { .. } => 3,
        Error::Mismatch(_) => 4,
        Error::DivisionByZero | Error::Overflow(_) | Error::DegenerateCone(_) => 1,
    }
}

/// Exit status for a verification failure inside a report.
pub const EXIT_MISMATCH: i32 = 4;
