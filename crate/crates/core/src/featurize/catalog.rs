//! Attribute descriptors and the default 130-entry catalog.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::FeaturizeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    Mean,
    Median,
    Variance,
}

impl Aggregation {
    fn as_str(self) -> &'static str {
        match self {
            Aggregation::Mean => "mean",
            Aggregation::Median => "median",
            Aggregation::Variance => "variance",
        }
    }
}

/// Which quantity of the least-squares line through `(t, x_t)` to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendAttr {
    Slope,
    Intercept,
    RValue,
    PValue,
    StdErr,
}

impl TrendAttr {
    pub const ALL: [TrendAttr; 5] =
        [TrendAttr::Slope, TrendAttr::Intercept, TrendAttr::RValue, TrendAttr::PValue, TrendAttr::StdErr];

    fn as_str(self) -> &'static str {
        match self {
            TrendAttr::Slope => "slope",
            TrendAttr::Intercept => "intercept",
            TrendAttr::RValue => "rvalue",
            TrendAttr::PValue => "pvalue",
            TrendAttr::StdErr => "stderr",
        }
    }
}

/// One time-series attribute: a family plus its parameters.
///
/// Serialized as `{"family": "...", "params": {...}}`; the canonical string
/// form is `family(param=value,...)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum Attribute {
    Mean,
    Median,
    StandardDeviation,
    Variance,
    Skewness,
    Kurtosis,
    Minimum,
    Maximum,
    SumValues,
    AbsEnergy,
    RootMeanSquare,
    MeanChange,
    MeanAbsChange,
    MeanSecondDerivativeCentral,
    CountAboveMean,
    CountBelowMean,
    LongestStrikeAboveMean,
    LongestStrikeBelowMean,
    LinearTrend { attr: TrendAttr },
    Autocorrelation { lag: usize },
    PartialAutocorrelation { lag: usize },
    AggAutocorrelation { maxlag: usize, agg: Aggregation },
    Quantile { q: f64 },
    ChangeQuantiles { ql: f64, qh: f64, isabs: bool, agg: Aggregation },
    NumberCrossingsMean,
    FirstLocationOfMaximum,
    LastLocationOfMaximum,
    FirstLocationOfMinimum,
    LastLocationOfMinimum,
    RatioBeyondRSigma { r: f64 },
    BinnedEntropy { bins: usize },
    C3 { lag: usize },
    CidCe { normalize: bool },
    NumberPeaks { support: usize },
}

impl Attribute {
    pub fn family(&self) -> &'static str {
        use Attribute::*;
        match self {
            Mean => "mean",
            Median => "median",
            StandardDeviation => "standard_deviation",
            Variance => "variance",
            Skewness => "skewness",
            Kurtosis => "kurtosis",
            Minimum => "minimum",
            Maximum => "maximum",
            SumValues => "sum_values",
            AbsEnergy => "abs_energy",
            RootMeanSquare => "root_mean_square",
            MeanChange => "mean_change",
            MeanAbsChange => "mean_abs_change",
            MeanSecondDerivativeCentral => "mean_second_derivative_central",
            CountAboveMean => "count_above_mean",
            CountBelowMean => "count_below_mean",
            LongestStrikeAboveMean => "longest_strike_above_mean",
            LongestStrikeBelowMean => "longest_strike_below_mean",
            LinearTrend { .. } => "linear_trend",
            Autocorrelation { .. } => "autocorrelation",
            PartialAutocorrelation { .. } => "partial_autocorrelation",
            AggAutocorrelation { .. } => "agg_autocorrelation",
            Quantile { .. } => "quantile",
            ChangeQuantiles { .. } => "change_quantiles",
            NumberCrossingsMean => "number_crossings_mean",
            FirstLocationOfMaximum => "first_location_of_maximum",
            LastLocationOfMaximum => "last_location_of_maximum",
            FirstLocationOfMinimum => "first_location_of_minimum",
            LastLocationOfMinimum => "last_location_of_minimum",
            RatioBeyondRSigma { .. } => "ratio_beyond_r_sigma",
            BinnedEntropy { .. } => "binned_entropy",
            C3 { .. } => "c3",
            CidCe { .. } => "cid_ce",
            NumberPeaks { .. } => "number_peaks",
        }
    }

    pub fn validate(&self) -> Result<(), FeaturizeError> {
        let bad = |msg: &str| Err(FeaturizeError::InvalidDescriptor(format!("{self}: {msg}")));
        match *self {
            Attribute::Autocorrelation { lag } | Attribute::PartialAutocorrelation { lag } | Attribute::C3 { lag }
                if lag == 0 =>
            {
                bad("lag must be >= 1")
            }
            Attribute::AggAutocorrelation { maxlag: 0, .. } => bad("maxlag must be >= 1"),
            Attribute::Quantile { q } if !(0.0..=1.0).contains(&q) => bad("q must lie in [0, 1]"),
            Attribute::ChangeQuantiles { ql, qh, .. } if !(0.0 <= ql && ql < qh && qh <= 1.0) => {
                bad("need 0 <= ql < qh <= 1")
            }
            Attribute::RatioBeyondRSigma { r } if !(r > 0.0 && r.is_finite()) => bad("r must be positive"),
            Attribute::BinnedEntropy { bins: 0 } => bad("bins must be >= 1"),
            Attribute::NumberPeaks { support: 0 } => bad("support must be >= 1"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: String = match *self {
            Attribute::LinearTrend { attr } => format!("attr={}", attr.as_str()),
            Attribute::Autocorrelation { lag } | Attribute::PartialAutocorrelation { lag } | Attribute::C3 { lag } => {
                format!("lag={lag}")
            }
            Attribute::AggAutocorrelation { maxlag, agg } => format!("maxlag={maxlag},agg={}", agg.as_str()),
            Attribute::Quantile { q } => format!("q={q}"),
            Attribute::ChangeQuantiles { ql, qh, isabs, agg } => {
                format!("ql={ql},qh={qh},isabs={isabs},agg={}", agg.as_str())
            }
            Attribute::RatioBeyondRSigma { r } => format!("r={r}"),
            Attribute::BinnedEntropy { bins } => format!("bins={bins}"),
            Attribute::CidCe { normalize } => format!("normalize={normalize}"),
            Attribute::NumberPeaks { support } => format!("support={support}"),
            _ => String::new(),
        };
        write!(f, "{}({params})", self.family())
    }
}

/// Ordered, duplicate-free list of attributes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttributeCatalog(Vec<Attribute>);

impl AttributeCatalog {
    pub fn new(attributes: Vec<Attribute>) -> Result<Self, FeaturizeError> {
        let mut seen = BTreeSet::new();
        for a in &attributes {
            a.validate()?;
            if !seen.insert(format!("{a}")) {
                return Err(FeaturizeError::InvalidDescriptor(format!("duplicate descriptor {a}")));
            }
        }
        Ok(Self(attributes))
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Attribute> {
        self.0.iter()
    }
}

/// The fixed 130-attribute catalog in canonical order.
pub fn default_catalog() -> AttributeCatalog {
    use Attribute::*;
    let mut v = Vec::with_capacity(130);
    v.extend([
        Mean,
        Median,
        StandardDeviation,
        Variance,
        Skewness,
        Kurtosis,
        Minimum,
        Maximum,
        SumValues,
        AbsEnergy,
        RootMeanSquare,
        MeanChange,
        MeanAbsChange,
        MeanSecondDerivativeCentral,
        CountAboveMean,
        CountBelowMean,
        LongestStrikeAboveMean,
        LongestStrikeBelowMean,
    ]);
    v.extend(TrendAttr::ALL.iter().map(|&attr| LinearTrend { attr }));
    v.extend((1..=10).map(|lag| Autocorrelation { lag }));
    v.extend((1..=10).map(|lag| PartialAutocorrelation { lag }));
    v.extend(
        [Aggregation::Mean, Aggregation::Median, Aggregation::Variance]
            .map(|agg| AggAutocorrelation { maxlag: 40, agg }),
    );
    v.extend([0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9].map(|q| Quantile { q }));
    let grid = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    for (i, &ql) in grid.iter().enumerate() {
        for &qh in &grid[i + 1..] {
            for isabs in [true, false] {
                for agg in [Aggregation::Mean, Aggregation::Variance] {
                    v.push(ChangeQuantiles { ql, qh, isabs, agg });
                }
            }
        }
    }
    v.extend([
        NumberCrossingsMean,
        FirstLocationOfMaximum,
        LastLocationOfMaximum,
        FirstLocationOfMinimum,
        LastLocationOfMinimum,
        RatioBeyondRSigma { r: 1.0 },
        RatioBeyondRSigma { r: 2.0 },
        BinnedEntropy { bins: 10 },
    ]);
    v.extend((1..=3).map(|lag| C3 { lag }));
    v.extend([CidCe { normalize: true }, CidCe { normalize: false }]);
    v.extend([1, 3, 5].map(|support| NumberPeaks { support }));
    AttributeCatalog::new(v).expect("default catalog is valid")
}
