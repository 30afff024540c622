//! Reference scalings for four-level, 4x4 services (Nil, Yellow, Orange, Red).
//!
//! Columns are listed for MOD+, SEV+ and EXT from the bottom (unlikely) row up.

use super::WarningScaling;

const NIL: usize = 0;
const YELLOW: usize = 1;
const ORANGE: usize = 2;
const RED: usize = 3;

fn build(columns: [[usize; 4]; 3]) -> WarningScaling {
    WarningScaling::from_warning_columns(columns.iter().map(|c| c.to_vec()).collect(), 3)
        .expect("preset scaling is valid")
}

/// Short-range scaling of the Sydney rainfall service.
pub fn short_range() -> WarningScaling {
    build([
        [NIL, YELLOW, YELLOW, ORANGE],
        [NIL, YELLOW, ORANGE, RED],
        [NIL, ORANGE, RED, RED],
    ])
}

pub fn mid_range() -> WarningScaling {
    build([
        [NIL, YELLOW, YELLOW, YELLOW],
        [NIL, YELLOW, ORANGE, ORANGE],
        [NIL, YELLOW, ORANGE, RED],
    ])
}

/// Yellow whenever any warning category is at least possible.
pub fn long_range() -> WarningScaling {
    build([
        [NIL, YELLOW, YELLOW, YELLOW],
        [NIL, YELLOW, YELLOW, YELLOW],
        [NIL, YELLOW, YELLOW, YELLOW],
    ])
}

/// The scaling used to illustrate the weight algorithm.
pub fn zeta() -> WarningScaling {
    build([
        [NIL, NIL, YELLOW, YELLOW],
        [NIL, ORANGE, ORANGE, RED],
        [NIL, ORANGE, RED, RED],
    ])
}

/// Default scaling for the synthetic heat service.
pub fn heat() -> WarningScaling {
    build([
        [NIL, YELLOW, YELLOW, YELLOW],
        [NIL, ORANGE, RED, RED],
        [NIL, RED, RED, RED],
    ])
}

/// Alternative heat scaling found by searching all 980 valid 3x3 scalings for the
/// closest match to the reference synthetic-experiment means (see the
/// `heat_scaling_search` example). Its unit-evaluation warning weights sum to 5.
pub fn heat_fitted() -> WarningScaling {
    build([
        [NIL, NIL, YELLOW, YELLOW],
        [NIL, YELLOW, ORANGE, ORANGE],
        [NIL, ORANGE, ORANGE, RED],
    ])
}

/// River flood service with probability thresholds 20%, 25%, 50%: Yellow if
/// MOD+ is at least 50%, Orange if SEV+ is at least 25%, Red if EXT is at least 20%.
pub fn flood() -> WarningScaling {
    build([
        [NIL, NIL, NIL, YELLOW],
        [NIL, NIL, ORANGE, ORANGE],
        [NIL, RED, RED, RED],
    ])
}

pub fn four_levels() -> Vec<String> {
    ["Nil", "Yellow Warning", "Orange Warning", "Red Warning"]
        .map(String::from)
        .to_vec()
}

pub fn severity_labels() -> Vec<String> {
    ["MIN", "MOD+", "SEV+", "EXT"].map(String::from).to_vec()
}

pub fn certainty_labels() -> Vec<String> {
    ["unlikely", "possible", "likely", "very likely"]
        .map(String::from)
        .to_vec()
}
