//! Published IU X-ray results, kept for display next to computed rows.
//! `None` marks cells the original sources did not report.

pub type PublishedCells = [Option<f64>; 9];

pub struct PublishedRow {
    pub system: &'static str,
    pub cells: PublishedCells,
}

macro_rules! row {
    ($name:expr, [$($v:expr),* $(,)?]) => {
        PublishedRow { system: $name, cells: [$($v),*] }
    };
}

const fn v(x: f64) -> Option<f64> {
    Some(x)
}

const NA: Option<f64> = None;

/// Models from the literature, as published.
pub const STATE_OF_THE_ART: &[PublishedRow] = &[
    row!(
        "Liu et al.",
        [
            v(0.369),
            v(0.246),
            v(0.171),
            v(0.115),
            v(0.225),
            v(0.359),
            v(1.490),
            v(0.916),
            NA
        ]
    ),
    row!(
        "TieNet",
        [
            v(0.330),
            v(0.194),
            v(0.124),
            v(0.081),
            v(0.182),
            v(0.311),
            v(1.335),
            v(0.902),
            NA
        ]
    ),
    row!(
        "KERP",
        [
            v(0.482),
            v(0.325),
            v(0.226),
            v(0.162),
            v(0.298),
            v(0.339),
            v(0.280),
            NA,
            NA
        ]
    ),
    row!(
        "Xue et al.",
        [
            v(0.477),
            v(0.332),
            v(0.243),
            v(0.189),
            v(0.310),
            v(0.380),
            NA,
            NA,
            NA
        ]
    ),
];

/// Published scores of the weak baselines this crate implements.
pub const WEAK_BASELINES: &[PublishedRow] = &[
    row!(
        "Constant",
        [
            v(0.455),
            v(0.312),
            v(0.223),
            v(0.165),
            v(0.289),
            v(0.357),
            v(0.293),
            v(0.915),
            v(0.500)
        ]
    ),
    row!(
        "Random",
        [
            v(0.362),
            v(0.197),
            v(0.117),
            v(0.075),
            v(0.188),
            v(0.264),
            v(0.112),
            v(0.894),
            v(0.508)
        ]
    ),
    row!(
        "Nearest-neighbor",
        [
            v(0.383),
            v(0.220),
            v(0.142),
            v(0.100),
            v(0.211),
            v(0.288),
            v(0.230),
            v(0.903),
            v(0.518)
        ]
    ),
    row!(
        "Top-sentences-100",
        [
            v(0.347),
            v(0.211),
            v(0.138),
            v(0.096),
            v(0.198),
            v(0.281),
            v(0.166),
            v(0.911),
            v(0.498)
        ]
    ),
    row!(
        "Top-words-50",
        [
            v(0.375),
            v(0.102),
            v(0.019),
            v(0.000),
            v(0.124),
            v(0.224),
            v(0.075),
            v(0.835),
            v(0.509)
        ]
    ),
];

/// Trained CNN-LSTM generators; not reproduced here.
pub const CNN_LSTM: &[PublishedRow] = &[
    row!(
        "CNN-LSTM",
        [
            v(0.379),
            v(0.239),
            v(0.164),
            v(0.117),
            v(0.225),
            v(0.338),
            v(0.284),
            v(0.912),
            v(0.505)
        ]
    ),
    row!(
        "CNN-LSTM-att",
        [
            v(0.361),
            v(0.226),
            v(0.152),
            v(0.106),
            v(0.211),
            v(0.314),
            v(0.187),
            v(0.918),
            v(0.508)
        ]
    ),
];

pub fn weak_baseline(system: &str) -> Option<&'static PublishedRow> {
    WEAK_BASELINES.iter().find(|r| r.system == system)
}
