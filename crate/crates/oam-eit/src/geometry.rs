//! Transmit-array, receive-ring and observer-grid geometry in a shared frame.
//!
//! The transmit UCA sits in the z = 0 plane centered on the origin. Source
//! n_t (1-based) is centered at angle 2 pi n_t / N_t on the radius-R_t circle
//! and extends along the y axis; its N_l feeds are evenly spaced over the
//! source length with both endpoints included:
//!
//! ```text
//! s_{n_t,n_l} = ( R_t cos(2 pi n_t / N_t),
//!                 R_t sin(2 pi n_t / N_t) + (n_l - 1)/(N_l - 1) L - L/2,
//!                 0 )
//! ```
//!
//! Receive rings and observer grids live on planes z = d > 0.

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

pub fn vec3_sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn vec3_dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn vec3_norm(a: Vec3) -> f64 {
    vec3_dot(a, a).sqrt()
}

/// Transmit UCA of N_t y-aligned linear sources, each with N_l feeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitArrayConfig {
    /// Number of linear sources N_t.
    pub n_sources: usize,
    /// Feeds per source N_l.
    pub feeds_per_source: usize,
    /// UCA radius R_t, m.
    pub radius: f64,
    /// Source length L, m.
    pub source_length: f64,
}

impl TransmitArrayConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_sources == 0 {
            return Err(Error::InvalidConfig {
                what: "n_sources",
                message: "must be at least 1".into(),
            });
        }
        if self.feeds_per_source == 0 {
            return Err(Error::InvalidConfig {
                what: "feeds_per_source",
                message: "must be at least 1".into(),
            });
        }
        if !(self.radius > 0.0) {
            return Err(Error::InvalidConfig {
                what: "radius",
                message: format!("must be positive, got {}", self.radius),
            });
        }
        if !(self.source_length > 0.0) {
            return Err(Error::InvalidConfig {
                what: "source_length",
                message: format!("must be positive, got {}", self.source_length),
            });
        }
        Ok(())
    }
}

/// One small feed of one transmit source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedPoint {
    /// Source index n_t, 1..=N_t.
    pub source_index: usize,
    /// Feed index n_l, 1..=N_l.
    pub feed_index: usize,
    pub position: Vec3,
}

/// Line segment occupied by one source, for quadrature of the continuous form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSegment {
    pub source_index: usize,
    /// Segment center (x_c, y_c, 0).
    pub center: Vec3,
    /// Segment length L along y.
    pub length: f64,
}

/// Feed coordinates in row-major (n_t, n_l) order; all z = 0.
///
/// For N_l = 1 the single feed sits at the source center (the along-source
/// offset is taken as 0 rather than 0/0).
pub fn build_feed_points(config: &TransmitArrayConfig) -> Result<Vec<FeedPoint>> {
    config.validate()?;
    let tau = 2.0 * std::f64::consts::PI;
    let mut feeds = Vec::with_capacity(config.n_sources * config.feeds_per_source);
    for n_t in 1..=config.n_sources {
        let angle = tau * (n_t as f64) / (config.n_sources as f64);
        let (x, y_center) = (config.radius * angle.cos(), config.radius * angle.sin());
        for n_l in 1..=config.feeds_per_source {
            let offset = if config.feeds_per_source == 1 {
                0.0
            } else {
                (n_l - 1) as f64 / (config.feeds_per_source - 1) as f64 * config.source_length
                    - config.source_length / 2.0
            };
            feeds.push(FeedPoint {
                source_index: n_t,
                feed_index: n_l,
                position: [x, y_center + offset, 0.0],
            });
        }
    }
    Ok(feeds)
}

/// Centers and lengths of the source segments, in n_t order.
pub fn build_source_segments(config: &TransmitArrayConfig) -> Result<Vec<SourceSegment>> {
    config.validate()?;
    let tau = 2.0 * std::f64::consts::PI;
    Ok((1..=config.n_sources)
        .map(|n_t| {
            let angle = tau * (n_t as f64) / (config.n_sources as f64);
            SourceSegment {
                source_index: n_t,
                center: [config.radius * angle.cos(), config.radius * angle.sin(), 0.0],
                length: config.source_length,
            }
        })
        .collect())
}

/// Ring of N_r receive points at radius R_r in the plane z = d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiveRingConfig {
    pub n_points: usize,
    /// Ring radius R_r, m.
    pub radius: f64,
    /// Separation of transmit and receive planes along z, m.
    pub axial_distance: f64,
    /// Angular offset of point 1, rad (default 0).
    pub angular_offset: f64,
}

impl ReceiveRingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_points == 0 {
            return Err(Error::InvalidConfig {
                what: "n_points",
                message: "must be at least 1".into(),
            });
        }
        if !(self.radius > 0.0) {
            return Err(Error::InvalidConfig {
                what: "ring radius",
                message: format!("must be positive, got {}", self.radius),
            });
        }
        Ok(())
    }
}

/// Receive point n_r at angle 2 pi n_r / N_r + offset, z = d.
pub fn build_receive_ring(config: &ReceiveRingConfig) -> Result<Vec<Vec3>> {
    config.validate()?;
    let tau = 2.0 * std::f64::consts::PI;
    Ok((1..=config.n_points)
        .map(|n_r| {
            let angle = tau * (n_r as f64) / (config.n_points as f64) + config.angular_offset;
            [
                config.radius * angle.cos(),
                config.radius * angle.sin(),
                config.axial_distance,
            ]
        })
        .collect())
}

/// Square grid of virtual receive points on the plane z = axial_distance,
/// centered on the z axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObserverGrid {
    /// Plane position along z, m.
    pub axial_distance: f64,
    /// Full side length of the grid, m.
    pub width: f64,
    /// Samples per side (rows = cols).
    pub resolution: usize,
}

impl ObserverGrid {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::InvalidConfig {
                what: "grid resolution",
                message: format!("must be at least 2, got {}", self.resolution),
            });
        }
        if !(self.width > 0.0) {
            return Err(Error::InvalidConfig {
                what: "grid width",
                message: format!("must be positive, got {}", self.width),
            });
        }
        Ok(())
    }

    pub fn point_count(&self) -> usize {
        self.resolution * self.resolution
    }

    /// Cell-center coordinate of index i along one axis.
    fn coord(&self, i: usize) -> f64 {
        (i as f64 + 0.5) / self.resolution as f64 * self.width - self.width / 2.0
    }
}

/// Row-major grid positions (y varies slowest).
pub fn build_observer_grid(grid: &ObserverGrid) -> Result<Vec<Vec3>> {
    grid.validate()?;
    let mut pts = Vec::with_capacity(grid.point_count());
    for iy in 0..grid.resolution {
        let y = grid.coord(iy);
        for ix in 0..grid.resolution {
            pts.push([grid.coord(ix), y, grid.axial_distance]);
        }
    }
    Ok(pts)
}

/// A validated transmit array: its config plus the realized feed points.
///
/// Field synthesis and correlation assembly consume this rather than a raw
/// feed list so the per-feed normalization (1/sqrt(N_t N_l), see fields) and
/// continuous-form segments always agree with the discrete feed layout.
#[derive(Debug, Clone)]
pub struct TransmitArray {
    pub config: TransmitArrayConfig,
    pub feeds: Vec<FeedPoint>,
    pub segments: Vec<SourceSegment>,
}

impl TransmitArray {
    pub fn new(config: TransmitArrayConfig) -> Result<Self> {
        let feeds = build_feed_points(&config)?;
        let segments = build_source_segments(&config)?;
        Ok(Self {
            config,
            feeds,
            segments,
        })
    }

    pub fn n_sources(&self) -> usize {
        self.config.n_sources
    }

    pub fn feeds_per_source(&self) -> usize {
        self.config.feeds_per_source
    }

    /// Feeds of source n_t (1-based) as a contiguous slice.
    pub fn source_feeds(&self, n_t: usize) -> &[FeedPoint] {
        let nl = self.config.feeds_per_source;
        &self.feeds[(n_t - 1) * nl..n_t * nl]
    }
}
