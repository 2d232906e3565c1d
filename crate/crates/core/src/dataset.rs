//! Tabular data loading and the dummy encodings consumed by the selectors.
//!
//! Class order is always first appearance in the data, and the reference
//! class of a dummy encoding (the all-zero row) is the last class in that
//! order. Categorical feature columns hold integer category codes assigned
//! in first-appearance order.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Scalar;

/// Declared kind of a feature column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnKind {
    Numeric,
    /// Category labels in first-appearance order; the stored column holds
    /// the matching codes `0..K-1`.
    Categorical { levels: Vec<String> },
}

impl ColumnKind {
    pub fn is_categorical(&self) -> bool {
        matches!(self, ColumnKind::Categorical { .. })
    }
}

/// An instances-by-features matrix with named, kind-tagged columns.
#[derive(Debug, Clone)]
pub struct FeatureMatrix<T> {
    /// `N x n` values; categorical columns store their integer codes.
    pub values: Array2<T>,
    pub names: Vec<String>,
    pub kinds: Vec<ColumnKind>,
}

impl<T: Scalar> FeatureMatrix<T> {
    /// Validating constructor. Requires at least two instances and one
    /// feature, finite entries, and in-range category codes with at least
    /// two levels per categorical column.
    pub fn new(values: Array2<T>, names: Vec<String>, kinds: Vec<ColumnKind>) -> Result<Self> {
        let (n_rows, n_cols) = values.dim();
        if n_rows < 2 {
            return Err(Error::Data(format!("fewer than 2 rows ({n_rows})")));
        }
        if n_cols == 0 {
            return Err(Error::Data("no feature columns".into()));
        }
        if names.len() != n_cols || kinds.len() != n_cols {
            return Err(Error::InvalidArgument(format!(
                "expected {n_cols} names and kinds, got {} and {}",
                names.len(),
                kinds.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("matrix contains NaN or infinite values".into()));
        }
        for (j, kind) in kinds.iter().enumerate() {
            if let ColumnKind::Categorical { levels } = kind {
                if levels.len() < 2 {
                    return Err(Error::Data(format!(
                        "categorical column '{}' has fewer than 2 categories",
                        names[j]
                    )));
                }
                let k = T::from_usize(levels.len()).unwrap();
                for v in values.column(j) {
                    if *v < T::zero() || *v >= k || v.fract() != T::zero() {
                        return Err(Error::Data(format!(
                            "column '{}' holds a value outside its {} category codes",
                            names[j],
                            levels.len()
                        )));
                    }
                }
            }
        }
        Ok(FeatureMatrix {
            values,
            names,
            kinds,
        })
    }

    /// Convenience constructor for all-numeric matrices with generated
    /// names `x1..xn`.
    pub fn from_numeric(values: Array2<T>) -> Result<Self> {
        let n = values.ncols();
        let names = (1..=n).map(|j| format!("x{j}")).collect();
        let kinds = vec![ColumnKind::Numeric; n];
        FeatureMatrix::new(values, names, kinds)
    }

    pub fn n_instances(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_features(&self) -> usize {
        self.values.ncols()
    }

    pub fn column(&self, j: usize) -> Array1<T> {
        self.values.column(j).to_owned()
    }

    /// Indices of columns with no variation. Such columns are retained
    /// (the selectors score them as zero-criterion candidates), but callers
    /// may want to warn about them.
    pub fn constant_columns(&self) -> Vec<usize> {
        (0..self.n_features())
            .filter(|&j| {
                let col = self.values.column(j);
                let first = col[0];
                col.iter().all(|&v| v == first)
            })
            .collect()
    }
}

/// How a response matrix was encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EncodingScheme {
    #[serde(rename = "binomial-dummy")]
    BinomialDummy,
    #[serde(rename = "c-1-dummy")]
    CMinusOneDummy,
}

/// Dummy-encoded response: an `N x 1` 0/1 vector for two classes, or an
/// `N x (c-1)` 0/1 matrix where the all-zero row denotes the reference
/// class (the last entry of `classes`).
#[derive(Debug, Clone)]
pub struct EncodedResponse<T> {
    pub matrix: Array2<T>,
    /// All `c` class labels in first-appearance order.
    pub classes: Vec<String>,
    pub scheme: EncodingScheme,
}

impl<T: Scalar> EncodedResponse<T> {
    pub fn n_instances(&self) -> usize {
        self.matrix.nrows()
    }

    /// Encoded width `m = c - 1`.
    pub fn width(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    /// Recover the class label of instance `i` from its encoded row.
    pub fn decode_row(&self, i: usize) -> &str {
        for j in 0..self.width() {
            if self.matrix[[i, j]] == T::one() {
                return &self.classes[j];
            }
        }
        self.classes.last().expect("at least one class")
    }
}

fn distinct_in_order(labels: &[String]) -> Vec<String> {
    let mut seen = Vec::new();
    for l in labels {
        if !seen.contains(l) {
            seen.push(l.clone());
        }
    }
    seen
}

/// Encode two-class labels as an `N x 1` dummy vector: the first-appearing
/// class maps to 1, the other to 0. The value choice does not affect any
/// correlation-based criterion.
pub fn encode_response_binomial<T: Scalar>(labels: &[String]) -> Result<EncodedResponse<T>> {
    let classes = distinct_in_order(labels);
    if classes.len() != 2 {
        return Err(Error::Data(format!(
            "binomial encoding requires exactly 2 classes, found {}",
            classes.len()
        )));
    }
    let column: Vec<T> = labels
        .iter()
        .map(|l| if *l == classes[0] { T::one() } else { T::zero() })
        .collect();
    let n = column.len();
    Ok(EncodedResponse {
        matrix: Array2::from_shape_vec((n, 1), column).expect("shape"),
        classes,
        scheme: EncodingScheme::BinomialDummy,
    })
}

/// Encode `c`-class labels as an `N x (c-1)` dummy matrix; the last class
/// in first-appearance order becomes the all-zero reference row.
pub fn encode_response_multinomial<T: Scalar>(labels: &[String]) -> Result<EncodedResponse<T>> {
    let classes = distinct_in_order(labels);
    if classes.len() < 2 {
        return Err(Error::Data(
            "response has a single class; nothing to separate".into(),
        ));
    }
    let n = labels.len();
    let m = classes.len() - 1;
    let mut matrix = Array2::zeros((n, m));
    for (i, label) in labels.iter().enumerate() {
        let j = classes.iter().position(|c| c == label).expect("known class");
        if j < m {
            matrix[[i, j]] = T::one();
        }
    }
    Ok(EncodedResponse {
        matrix,
        classes,
        scheme: EncodingScheme::CMinusOneDummy,
    })
}

/// One categorical feature expanded to an `N x (K-1)` dummy block; the last
/// category code is the all-zero reference.
#[derive(Debug, Clone)]
pub struct FeatureBlock<T> {
    pub columns: Array2<T>,
    /// Index of the source feature in the originating matrix.
    pub source: usize,
}

impl<T: Scalar> FeatureBlock<T> {
    /// Encoded width `z = K - 1`.
    pub fn width(&self) -> usize {
        self.columns.ncols()
    }
}

/// Dummy-encode one categorical column given as category codes `0..K-1`.
pub fn encode_feature_categorical<T: Scalar>(
    codes: &[usize],
    n_categories: usize,
    source: usize,
) -> Result<FeatureBlock<T>> {
    if n_categories < 2 {
        return Err(Error::InvalidArgument(format!(
            "dummy encoding requires at least 2 categories, got {n_categories}"
        )));
    }
    if let Some(&bad) = codes.iter().find(|&&c| c >= n_categories) {
        return Err(Error::InvalidArgument(format!(
            "category code {bad} out of range for {n_categories} categories"
        )));
    }
    let mut columns = Array2::zeros((codes.len(), n_categories - 1));
    for (i, &c) in codes.iter().enumerate() {
        if c < n_categories - 1 {
            columns[[i, c]] = T::one();
        }
    }
    Ok(FeatureBlock { columns, source })
}

/// Binning scheme for continuous features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiscretizeScheme {
    /// Edges at the mean plus/minus one sample standard deviation: 3 bins.
    #[serde(rename = "mean-std-3")]
    MeanStd3,
    /// Edges at the mean and the mean plus/minus one sample standard
    /// deviation: 4 bins.
    #[serde(rename = "mean-std-4")]
    MeanStd4,
}

impl FromStr for DiscretizeScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean-std-3" => Ok(DiscretizeScheme::MeanStd3),
            "mean-std-4" => Ok(DiscretizeScheme::MeanStd4),
            other => Err(Error::InvalidArgument(format!(
                "unknown discretization scheme '{other}' (expected mean-std-3 or mean-std-4)"
            ))),
        }
    }
}

impl fmt::Display for DiscretizeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscretizeScheme::MeanStd3 => write!(f, "mean-std-3"),
            DiscretizeScheme::MeanStd4 => write!(f, "mean-std-4"),
        }
    }
}

/// Result of binning a numeric column.
#[derive(Debug, Clone)]
pub struct Discretized {
    pub codes: Vec<usize>,
    pub n_categories: usize,
    /// Set when the column had zero variance: every instance landed in a
    /// single category and the codes carry no information.
    pub constant: bool,
}

/// Bin a numeric column at mean/standard-deviation edges. Boundary values
/// go to the lower bin. Uses the sample standard deviation (N-1 divisor).
pub fn discretize<T: Scalar>(column: &Array1<T>, scheme: DiscretizeScheme) -> Result<Discretized> {
    let n = column.len();
    if n == 0 {
        return Err(Error::InvalidArgument("cannot discretize an empty column".into()));
    }
    let mean = column.mean().unwrap();
    let var = if n > 1 {
        column.iter().map(|&v| (v - mean) * (v - mean)).sum::<T>()
            / T::from_usize(n - 1).unwrap()
    } else {
        T::zero()
    };
    if var == T::zero() {
        return Ok(Discretized {
            codes: vec![0; n],
            n_categories: 1,
            constant: true,
        });
    }
    let sd = var.sqrt();
    let edges: Vec<T> = match scheme {
        DiscretizeScheme::MeanStd3 => vec![mean - sd, mean + sd],
        DiscretizeScheme::MeanStd4 => vec![mean - sd, mean, mean + sd],
    };
    let codes = column
        .iter()
        .map(|&v| edges.iter().filter(|&&e| v > e).count())
        .collect();
    Ok(Discretized {
        codes,
        n_categories: edges.len() + 1,
        constant: false,
    })
}

/// Expand every feature of a matrix into a dummy block for block-wise
/// selection: numeric columns are discretized first, categorical columns
/// use their existing codes. Columns that collapse to a single category
/// yield a zero-width block, which the selector treats as a permanently
/// degenerate candidate.
pub fn olsd_blocks<T: Scalar>(
    x: &FeatureMatrix<T>,
    scheme: DiscretizeScheme,
) -> Result<Vec<(String, Array2<T>)>> {
    let n_rows = x.n_instances();
    let mut blocks = Vec::with_capacity(x.n_features());
    for j in 0..x.n_features() {
        let name = x.names[j].clone();
        let block = match &x.kinds[j] {
            ColumnKind::Categorical { levels } => {
                let codes: Vec<usize> = x
                    .values
                    .column(j)
                    .iter()
                    .map(|v| v.to_usize().expect("validated category code"))
                    .collect();
                encode_feature_categorical::<T>(&codes, levels.len(), j)?.columns
            }
            ColumnKind::Numeric => {
                let d = discretize(&x.column(j), scheme)?;
                if d.constant {
                    Array2::zeros((n_rows, 0))
                } else {
                    encode_feature_categorical::<T>(&d.codes, d.n_categories, j)?.columns
                }
            }
        };
        blocks.push((name, block));
    }
    Ok(blocks)
}

/// CSV ingestion options.
#[derive(Debug, Clone)]
pub struct CsvOptions {
    /// Field delimiter, comma by default.
    pub delimiter: u8,
    /// Names of columns to load as categorical instead of numeric.
    pub categorical: Vec<String>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            delimiter: b',',
            categorical: Vec::new(),
        }
    }
}

/// Load a header-bearing CSV file, returning the feature matrix and the raw
/// labels of `label_column` (which is excluded from the features).
pub fn load_csv<T: Scalar>(
    path: &Path,
    label_column: &str,
    options: &CsvOptions,
) -> Result<(FeatureMatrix<T>, Vec<String>)> {
    let display = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::Io(format!("{display}: {e}")))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Data(format!("{display}: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| {
            Error::Data(format!(
                "{display}: label column '{label_column}' not found in header"
            ))
        })?;
    for name in &options.categorical {
        if !headers.iter().any(|h| h == name) {
            return Err(Error::InvalidArgument(format!(
                "categorical override '{name}' is not a column of {display}"
            )));
        }
        if name == label_column {
            return Err(Error::InvalidArgument(format!(
                "label column '{name}' cannot also be a categorical feature"
            )));
        }
    }

    let feature_cols: Vec<usize> = (0..headers.len()).filter(|&j| j != label_idx).collect();
    let n_features = feature_cols.len();
    if n_features == 0 {
        return Err(Error::Data(format!(
            "{display}: no feature columns besides the label"
        )));
    }
    let mut kinds: Vec<ColumnKind> = feature_cols
        .iter()
        .map(|&j| {
            if options.categorical.iter().any(|c| *c == headers[j]) {
                ColumnKind::Categorical { levels: Vec::new() }
            } else {
                ColumnKind::Numeric
            }
        })
        .collect();

    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (rec_idx, record) in reader.records().enumerate() {
        let line = rec_idx + 2; // header occupies line 1
        let record = record.map_err(|e| Error::Data(format!("{display}:{line}: {e}")))?;
        if record.len() != headers.len() {
            return Err(Error::Data(format!(
                "{display}:{line}: expected {} fields, found {}",
                headers.len(),
                record.len()
            )));
        }
        labels.push(record[label_idx].to_string());
        let mut row = Vec::with_capacity(n_features);
        for (slot, &j) in feature_cols.iter().enumerate() {
            let token = &record[j];
            let value = match &mut kinds[slot] {
                ColumnKind::Numeric => {
                    let parsed: f64 = token.parse().map_err(|_| {
                        Error::Data(format!(
                            "{display}:{line}: non-numeric value '{token}' in numeric column '{}'",
                            headers[j]
                        ))
                    })?;
                    if !parsed.is_finite() {
                        return Err(Error::Data(format!(
                            "{display}:{line}: non-finite value in column '{}'",
                            headers[j]
                        )));
                    }
                    T::from_f64(parsed).unwrap()
                }
                ColumnKind::Categorical { levels } => {
                    let code = match levels.iter().position(|l| l == token) {
                        Some(c) => c,
                        None => {
                            levels.push(token.to_string());
                            levels.len() - 1
                        }
                    };
                    T::from_usize(code).unwrap()
                }
            };
            row.push(value);
        }
        rows.push(row);
    }

    if rows.len() < 2 {
        return Err(Error::Data(format!(
            "{display}: fewer than 2 data rows ({})",
            rows.len()
        )));
    }
    if distinct_in_order(&labels).len() < 2 {
        return Err(Error::Data(format!(
            "{display}: label column '{label_column}' has a single class"
        )));
    }

    let n_rows = rows.len();
    let flat: Vec<T> = rows.into_iter().flatten().collect();
    let values = Array2::from_shape_vec((n_rows, n_features), flat).expect("shape");
    let names = feature_cols.iter().map(|&j| headers[j].clone()).collect();
    let matrix = FeatureMatrix::new(values, names, kinds)?;
    Ok((matrix, labels))
}
