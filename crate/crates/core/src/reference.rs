//! Published reference values, kept as static tables for regression checks.

/// One row of the ground-state convergence trace: truncation degree `2n`,
/// normalization `C`, energy `E` and the leading coefficients
/// `alpha_2 ..= alpha_16` (`None` where the degree is too small).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateRow {
    pub degree: usize,
    pub normalization: f64,
    pub energy: f64,
    pub coefficients: [Option<f64>; 8],
}

macro_rules! row {
    ($deg:expr, $c:expr, $e:expr; $($a:expr),*) => {
        GroundStateRow {
            degree: $deg,
            normalization: $c,
            energy: $e,
            coefficients: pad([$(Some($a)),*]),
        }
    };
}

const fn pad<const N: usize>(values: [Option<f64>; N]) -> [Option<f64>; 8] {
    let mut out = [None; 8];
    let mut i = 0;
    while i < N {
        out[i] = values[i];
        i += 1;
    }
    out
}

/// Ground state `E_(1,0)` with its normalization and leading coefficients,
/// six decimals.
pub const GROUND_STATE_TRACE: &[GroundStateRow] = &[
    row!(2, 1.056807, 2.666667; -0.666667),
    row!(4, 1.140012, 2.863894; -0.913200, 0.197227),
    row!(6, 1.106161, 2.799020; -0.843785, 0.207082, -0.056047),
    row!(8, 1.099255, 2.786553; -0.831059, 0.205789, -0.045361, -0.016270),
    row!(10, 1.094163, 2.777689; -0.822196, 0.204434, -0.041563, -0.007494, -0.015020),
    row!(12, 1.090862, 2.772063; -0.816638, 0.203467, -0.039622, -0.005198, -0.008023, -0.012058),
    row!(14, 1.088597, 2.768252; -0.812904, 0.202774, -0.038442, -0.004068, -0.006161, -0.006311, -0.010044),
    row!(16, 1.086983, 2.765561; -0.810281, 0.202268, -0.037661, -0.003395, -0.005232, -0.004792, -0.005218, -0.008531),
    row!(18, 1.085796, 2.763594; -0.808372, 0.201890, -0.037115, -0.002954, -0.004670, -0.004031, -0.003948, -0.004406),
    row!(20, 1.084900, 2.762114; -0.806941, 0.201601, -0.036717, -0.002645, -0.004295, -0.003567, -0.003309, -0.003323),
    row!(30, 1.082578, 2.758299; -0.803271, 0.200837, -0.035739, -0.001932, -0.003475, -0.002638, -0.002207, -0.001922),
    row!(40, 1.081679, 2.756826; -0.801863, 0.200534, -0.035380, -0.001686, -0.003205, -0.002353, -0.001901, -0.001589),
    row!(50, 1.081242, 2.756110; -0.801180, 0.200385, -0.035210, -0.001573, -0.003082, -0.002227, -0.001770, -0.001451),
    row!(60, 1.080999, 2.755709; -0.800799, 0.200300, -0.035116, -0.001511, -0.003016, -0.002160, -0.001701, -0.001380),
    row!(70, 1.080849, 2.755463; -0.800565, 0.200248, -0.035059, -0.001474, -0.002977, -0.002120, -0.001660, -0.001338),
    row!(80, 1.080751, 2.755301; -0.800411, 0.200214, -0.035022, -0.001450, -0.002951, -0.002094, -0.001634, -0.001311),
    row!(90, 1.080683, 2.755188; -0.800305, 0.200190, -0.034996, -0.001436, -0.002933, -0.002077, -0.001616, -0.001293),
    row!(100, 1.080634, 2.755107; -0.800228, 0.200173, -0.034978, -0.001422, -0.002921, -0.002064, -0.001604, -0.001281),
    row!(150, 1.080517, 2.754913; -0.800044, 0.200131, -0.034934, -0.001394, -0.002892, -0.002035, -0.001574, -0.001251),
    row!(200, 1.080476, 2.754844; -0.799979, 0.200116, -0.034918, -0.001384, -0.002881, -0.002025, -0.001564, -0.001241),
    row!(300, 1.080446, 2.754795; -0.799932, 0.200105, -0.034907, -0.001377, -0.002874, -0.002017, -0.001557, -0.001234),
    row!(400, 1.080436, 2.754777; -0.799916, 0.200102, -0.034903, -0.001375, -0.002871, -0.002015, -0.001555, -0.001231),
    row!(500, 1.080431, 2.754769; -0.799908, 0.200100, -0.034901, -0.001374, -0.002870, -0.002014, -0.001553, -0.001230),
];

pub fn ground_state_row(degree: usize) -> Option<&'static GroundStateRow> {
    GROUND_STATE_TRACE.iter().find(|r| r.degree == degree)
}

/// `E_(k,l)` for `l = 0..=3` (rows) and `k = 1..=6` (columns) at degree 500.
pub const ORBITAL_SERIES_500: [[f64; 6]; 4] = [
    [2.754769, 5.892214, 9.033009, 12.174403, 15.316005, 18.457716],
    [4.121332, 7.342181, 10.517287, 13.677648, 16.831345, 19.981459],
    [5.400079, 8.718436, 11.940889, 15.129721, 18.302539, 21.466420],
    [6.630371, 10.045716, 13.320189, 16.542195, 19.738192, 22.919240],
];

/// Tabulated `E_(k,l)` at degree 500, if present.
pub fn orbital_series_value(l: usize, k: usize) -> Option<f64> {
    ORBITAL_SERIES_500
        .get(l)
        .and_then(|row| k.checked_sub(1).and_then(|i| row.get(i)))
        .copied()
}

/// Even-labelled eigenvalues `E_2, E_4, ..., E_12` of the one-dimensional
/// infinite Cauchy well from a high-precision interval solver.
pub const D1_PRIMARY: [f64; 6] = [
    2.754795, 5.892233, 9.032984, 12.174295, 15.315777, 18.457329,
];

/// The same levels from an independent asymptotic method; the sixth level
/// was not reported.
pub const D1_SECONDARY: [Option<f64>; 6] = [
    Some(2.748894),
    Some(5.890486),
    Some(9.032079),
    Some(12.173672),
    Some(15.315554),
    None,
];
