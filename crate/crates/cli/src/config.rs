//! Scene files.
//!
//! ```toml
//! n = "1/2"
//!
//! [radiant]
//! point = ["0", "0"]      # or: dir = ["1", "0"] for a point at infinity
//!
//! [mirror.circle]
//! center = ["1", "0"]
//! radius = "1/3"
//!
//! [render]
//! viewport = [-0.5, -1.0, 2.5, 1.0]
//! width = 800
//! height = 533
//! samples = 64
//! grid = 512
//! ```
//!
//! Numbers that enter the geometry are strings holding a rational (`"p/q"`,
//! an integer, or a decimal such as `"0.25"`), so they stay exact.

use std::fmt;

use caustica::geom::{Circle2, Dir2, GeomError, Line2, Mirror, Point2, Radiant, Scene};
use caustica::scalar::{format_rational, parse_rational};
use caustica::Q;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),
    #[error("invalid scene: {0}")]
    Scene(#[from] GeomError),
    #[error("invalid render options: {0}")]
    Render(String),
}

/// A rational read from and written to its string form.
#[derive(Clone, Debug, PartialEq)]
pub struct Rational(pub Q);

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Rational).ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum RadiantConfig {
    #[serde(rename = "point")]
    Point([Rational; 2]),
    #[serde(rename = "dir")]
    Dir([Rational; 2]),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MirrorConfig {
    Circle { center: [Rational; 2], radius: Rational },
    Line { point: [Rational; 2], dir: [Rational; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Styles {
    pub rays_plus: String,
    pub rays_minus: String,
    pub caustic: String,
    pub ovals: String,
    pub mirror: String,
    pub radiant: String,
}

impl Default for Styles {
    fn default() -> Self {
        Styles {
            rays_plus: "blue".into(),
            rays_minus: "orange".into(),
            caustic: "red".into(),
            ovals: "green".into(),
            mirror: "black".into(),
            radiant: "black".into(),
        }
    }
}

/// Figure layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderSpec {
    /// `[xmin, ymin, xmax, ymax]` in scene coordinates.
    pub viewport: [f64; 4],
    pub width: u32,
    pub height: u32,
    /// Rays drawn per refraction constant.
    pub samples: usize,
    /// Marching-squares cells per side.
    pub grid: usize,
    /// Adjacent-ray intersections per validity interval for the caustic cloud.
    pub caustic_samples: usize,
    pub colors: Styles,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            viewport: [-0.5, -1.0, 2.5, 1.0],
            width: 800,
            height: 533,
            samples: 64,
            grid: 512,
            caustic_samples: 1024,
            colors: Styles::default(),
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let [x0, y0, x1, y1] = self.viewport;
        if !(x1 > x0 && y1 > y0) || self.viewport.iter().any(|v| !v.is_finite()) {
            return Err(ConfigError::Render("viewport must have positive width and height".into()));
        }
        if self.width == 0 || self.height == 0 {
            return Err(ConfigError::Render("pixel dimensions must be positive".into()));
        }
        if self.grid < 16 {
            return Err(ConfigError::Render("grid resolution must be at least 16".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub n: Rational,
    pub radiant: RadiantConfig,
    pub mirror: MirrorConfig,
    #[serde(default)]
    pub render: RenderSpec,
}

fn point(p: &[Rational; 2]) -> Point2<Q> {
    Point2::new(p[0].0.clone(), p[1].0.clone())
}

fn dir(p: &[Rational; 2]) -> Result<Dir2<Q>, GeomError> {
    Dir2::from_xy(p[0].0.clone(), p[1].0.clone())
}

impl SceneConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: SceneConfig = toml::from_str(text)?;
        cfg.render.validate()?;
        cfg.scene()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scene config serializes")
    }

    pub fn scene(&self) -> Result<Scene<Q>, GeomError> {
        let radiant = match &self.radiant {
            RadiantConfig::Point(p) => Radiant::Finite(point(p)),
            RadiantConfig::Dir(d) => Radiant::AtInfinity(dir(d)?),
        };
        let mirror = match &self.mirror {
            MirrorConfig::Circle { center, radius } => Mirror::Circle(Circle2::new(point(center), radius.0.clone())?),
            MirrorConfig::Line { point: p, dir: d } => Mirror::Line(Line2::new(point(p), dir(d)?)),
        };
        Scene::new(radiant, mirror, self.n.0.clone())
    }

    /// The normalized circle scene `A = (0, 0)`, `O = (1, 0)` with radius `r`.
    pub fn normalized(r: Q, n: Q) -> SceneConfig {
        let zero = || Rational(Q::from_integer(0.into()));
        let one = Rational(Q::from_integer(1.into()));
        SceneConfig {
            n: Rational(n),
            radiant: RadiantConfig::Point([zero(), zero()]),
            mirror: MirrorConfig::Circle { center: [one, zero()], radius: Rational(r) },
            render: RenderSpec::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use caustica::scalar::q;

    const FIG: &str = r#"
n = "1/2"

[radiant]
point = ["0", "0"]

[mirror.circle]
center = ["1", "0"]
radius = "1/3"
"#;

    #[test]
    fn parses_and_roundtrips() {
        let cfg = SceneConfig::parse(FIG).unwrap();
        assert_eq!(cfg.n.0, q(1, 2));
        assert_eq!(cfg.render, RenderSpec::default());
        let text = cfg.to_toml();
        let again = SceneConfig::parse(&text).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.to_toml(), text);
        assert_eq!(cfg, SceneConfig::normalized(q(1, 3), q(1, 2)));
    }

    #[test]
    fn decimals_are_exact() {
        let cfg = SceneConfig::parse(&FIG.replace("\"1/3\"", "\"0.25\"")).unwrap();
        assert_eq!(cfg.mirror, MirrorConfig::Circle {
            center: [Rational(q(1, 1)), Rational(q(0, 1))],
            radius: Rational(q(1, 4)),
        });
    }

    #[test]
    fn errors_carry_positions() {
        let err = SceneConfig::parse(&FIG.replace("\"1/3\"", "\"1/0\"")).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("invalid rational `1/0`") && msg.contains("line 9"), "{msg}");
        let err = SceneConfig::parse(&FIG.replace("\"1/3\"", "\"-1\"")).unwrap_err();
        assert!(matches!(err, ConfigError::Scene(GeomError::NonPositiveRadius)));
        let err = SceneConfig::parse(&format!("{FIG}\n[render]\ngrid = 4\n")).unwrap_err();
        assert!(matches!(err, ConfigError::Render(_)));
    }

    #[test]
    fn line_and_infinite_radiant() {
        let text = r#"
n = "-2"
[radiant]
dir = ["1", "0"]
[mirror.line]
point = ["1", "0"]
dir = ["0", "1"]
"#;
        let cfg = SceneConfig::parse(text).unwrap();
        let scene = cfg.scene().unwrap();
        assert!(matches!(scene.radiant, Radiant::AtInfinity(_)));
        assert_eq!(SceneConfig::parse(&cfg.to_toml()).unwrap(), cfg);
    }
}
