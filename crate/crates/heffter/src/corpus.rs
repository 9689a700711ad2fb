//! Reference arrays bundled with the crate.
//!
//! Each fixture records the strongest mode it verifies under, whether its
//! sums also vanish over the integers, and — where settled — whether it is
//! strictly weak.  The texts are the committed files under `fixtures/`, so
//! tests and the command-line reproduction targets share one corpus.

use crate::model::VerifyMode;

/// One bundled array with its known properties.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    /// Strongest mode the array verifies under.
    pub mode: VerifyMode,
    /// Row and column sums vanish over `Z`, not just modulo `v`.
    pub integer: bool,
    /// `Some(true)`: no classical array shares its skeleton and magnitudes;
    /// `Some(false)`: such an array exists (e.g. the fixture is classical or
    /// was derived from one); `None`: not pinned.
    pub strictly_weak: Option<bool>,
}

macro_rules! fixture {
    ($name:literal, $mode:ident, $integer:expr, $strict:expr) => {
        Fixture {
            name: $name,
            text: include_str!(concat!("../fixtures/", $name, ".txt")),
            mode: VerifyMode::$mode,
            integer: $integer,
            strictly_weak: $strict,
        }
    };
}

/// The fifteen bundled arrays.
pub const FIXTURES: &[Fixture] = &[
    fixture!("wh_3x4", Weak, false, Some(true)),
    fixture!("h8x6", Classical, true, Some(false)),
    fixture!("wh8x6_row_subset", Weak, true, Some(false)),
    fixture!("wh8x6_lines", Weak, true, Some(false)),
    fixture!("wh8x6_mixed", Weak, true, Some(false)),
    fixture!("wh16_4x4", RelativeWeak, false, None),
    fixture!("h6_3x3", RelativeClassical, false, Some(false)),
    fixture!("wh6_3x3_strict", RelativeWeak, false, Some(true)),
    fixture!("h2_4x3", RelativeClassical, true, Some(false)),
    fixture!("h4_4x3", RelativeClassical, false, Some(false)),
    fixture!("h6_4x3", RelativeClassical, false, Some(false)),
    fixture!("wh2_4x3_strict", RelativeWeak, false, Some(true)),
    fixture!("wh4_4x3_strict", RelativeWeak, false, Some(true)),
    fixture!("h3_12x12", RelativeClassical, true, Some(false)),
    fixture!("wh5_12x12", RelativeWeak, true, Some(true)),
];

/// The four Heffter systems `D_3(21;3)`, one per line.
pub const SYSTEMS_D3_21: &str = include_str!("../fixtures/d3_21.txt");

/// The unique Heffter system `D_8(32;3)`.
pub const SYSTEMS_D8_32: &str = include_str!("../fixtures/d8_32.txt");

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
