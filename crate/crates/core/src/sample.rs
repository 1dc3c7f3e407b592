/// One `(T, value[, sigma])` point of a measured or generated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    /// Temperature in kelvin.
    pub t: f64,
    pub value: f64,
    pub sigma: Option<f64>,
}

impl Sample {
    pub const fn new(t: f64, value: f64) -> Self {
        Self {
            t,
            value,
            sigma: None,
        }
    }

    pub const fn with_sigma(t: f64, value: f64, sigma: f64) -> Self {
        Self {
            t,
            value,
            sigma: Some(sigma),
        }
    }
}
