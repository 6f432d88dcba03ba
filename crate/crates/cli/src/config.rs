//! Run configuration: INI file, command-line overrides and validation.
//!
//! ```ini
//! [kernel]
//! a = 1
//! amplitude = 1
//! gamma = 1
//! markovian = false
//!
//! [channels]
//! a = bitflip
//! b = phaseflip
//!
//! [state]
//! family = sudden_change
//! param = 0.1,0.16
//! branch = upper
//!
//! [grid]
//! t_max = 10
//! t_steps = 2000
//!
//! [output]
//! format = csv
//! mode = analytic
//! ```
//!
//! `[state]` holds exactly one of `c = x,y,z`, `family` (with optional
//! `param` and `branch`) or `rho = path/to/matrix.json`. Grid times are in
//! units of `1/a`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use ini::Ini;

use discord_core::scenarios::{make_family_state, Branch, ChannelPair, InitialFamily};
use discord_core::{BellCoefficients, Decay, KernelParams, PauliAxis, TimeGrid};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Closed-form results only.
    #[default]
    Analytic,
    /// Numerical oracles only.
    Oracle,
    /// Both, side by side.
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Synchronized,
    Proportional,
    #[value(name = "sudden_change")]
    SuddenChange,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Triple(BellCoefficients),
    Family(InitialFamily),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub a: f64,
    pub amplitude: f64,
    pub gamma: f64,
    pub markovian: bool,
    pub channels: ChannelPair,
    pub state: StateSpec,
    /// End of the grid in units of `1/a`.
    pub t_max: f64,
    pub t_steps: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub mode: Mode,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a: 1.0,
            amplitude: 1.0,
            gamma: 1.0,
            markovian: false,
            channels: ChannelPair::default(),
            state: StateSpec::Family(InitialFamily::Synchronized {
                x: 0.6,
                branch: Branch::Upper,
            }),
            t_max: 10.0,
            t_steps: 2000,
            out: None,
            format: Format::Csv,
            mode: Mode::Analytic,
        }
    }
}

/// Values that may be left unset by one configuration layer.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub a: Option<f64>,
    pub amplitude: Option<f64>,
    pub gamma: Option<f64>,
    pub markovian: Option<bool>,
    pub channel_a: Option<PauliAxis>,
    pub channel_b: Option<PauliAxis>,
    pub c: Option<BellCoefficients>,
    pub family: Option<FamilyName>,
    pub family_param: Option<String>,
    pub branch: Option<Branch>,
    pub rho: Option<PathBuf>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub mode: Option<Mode>,
}

impl Overrides {
    /// `self` wins wherever it is set.
    pub fn over(self, base: Overrides) -> Overrides {
        // a state given on this layer replaces the whole state of the base
        let own_state = self.c.is_some() || self.family.is_some() || self.rho.is_some();
        let (c, family, rho) = if own_state {
            (self.c, self.family, self.rho)
        } else {
            (base.c, base.family, base.rho)
        };
        Overrides {
            a: self.a.or(base.a),
            amplitude: self.amplitude.or(base.amplitude),
            gamma: self.gamma.or(base.gamma),
            markovian: self.markovian.or(base.markovian),
            channel_a: self.channel_a.or(base.channel_a),
            channel_b: self.channel_b.or(base.channel_b),
            c,
            family,
            family_param: self.family_param.or(base.family_param),
            branch: self.branch.or(base.branch),
            rho,
            t_max: self.t_max.or(base.t_max),
            t_steps: self.t_steps.or(base.t_steps),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            mode: self.mode.or(base.mode),
        }
    }

    pub fn resolve(self) -> CliResult<RunConfig> {
        let d = RunConfig::default();
        let a = self.a.unwrap_or(d.a);
        let sources = [self.c.is_some(), self.family.is_some(), self.rho.is_some()];
        if sources.iter().filter(|s| **s).count() > 1 {
            return Err(CliError::Input("give only one of c, family and rho".into()));
        }
        if self.family.is_none() && (self.family_param.is_some() || self.branch.is_some()) {
            return Err(CliError::Input("family-param and branch need a family".into()));
        }
        let state = if let Some(c) = self.c {
            StateSpec::Triple(c)
        } else if let Some(path) = self.rho {
            StateSpec::File(path)
        } else if let Some(name) = self.family {
            StateSpec::Family(family(
                name,
                self.family_param.as_deref(),
                self.branch.unwrap_or_default(),
            )?)
        } else {
            d.state
        };
        let config = RunConfig {
            a,
            amplitude: self.amplitude.unwrap_or(a),
            gamma: self.gamma.unwrap_or(a),
            markovian: self.markovian.unwrap_or(false),
            channels: ChannelPair {
                a: self.channel_a.unwrap_or(d.channels.a),
                b: self.channel_b.unwrap_or(d.channels.b),
            },
            state,
            t_max: self.t_max.unwrap_or(d.t_max),
            t_steps: self.t_steps.unwrap_or(d.t_steps),
            out: self.out,
            format: self.format.unwrap_or_default(),
            mode: self.mode.unwrap_or_default(),
        };
        config.validate()?;
        Ok(config)
    }
}

fn family(name: FamilyName, param: Option<&str>, branch: Branch) -> CliResult<InitialFamily> {
    let values = match param {
        Some(p) => parse_list(p)?,
        None => match name {
            FamilyName::SuddenChange => vec![0.1, 0.16],
            _ => vec![0.6],
        },
    };
    let f = match (name, values.as_slice()) {
        (FamilyName::Synchronized, [x]) => InitialFamily::Synchronized { x: *x, branch },
        (FamilyName::Proportional, [x]) => InitialFamily::Proportional { x: *x, branch },
        (FamilyName::SuddenChange, [c_x, c_y]) => InitialFamily::SuddenChange {
            c_x: *c_x,
            c_y: *c_y,
            branch,
        },
        (FamilyName::SuddenChange, _) => {
            return Err(CliError::Input("sudden_change takes family-param c_x,c_y".into()))
        }
        _ => {
            return Err(CliError::Input(format!(
                "{} takes a single family-param",
                family_name(name)
            )))
        }
    };
    Ok(f)
}

fn family_name(name: FamilyName) -> &'static str {
    match name {
        FamilyName::Synchronized => "synchronized",
        FamilyName::Proportional => "proportional",
        FamilyName::SuddenChange => "sudden_change",
    }
}

fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("'{v}' is not a number")))
        })
        .collect()
}

pub fn parse_triple(s: &str) -> Result<BellCoefficients, String> {
    match parse_list(s).map_err(|e| e.to_string())?.as_slice() {
        [x, y, z] => Ok(BellCoefficients::new(*x, *y, *z)),
        _ => Err(format!("expected three comma-separated values, got '{s}'")),
    }
}

pub fn parse_axis(s: &str) -> Result<PauliAxis, String> {
    PauliAxis::from_str(s).map_err(|_| format!("unknown channel '{s}', use bitflip, bitphase or phaseflip"))
}

pub fn parse_branch(s: &str) -> Result<Branch, String> {
    match s {
        "upper" | "+" => Ok(Branch::Upper),
        "lower" | "-" => Ok(Branch::Lower),
        _ => Err(format!("unknown branch '{s}', use upper or lower")),
    }
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Upper => "upper",
        Branch::Lower => "lower",
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        self.kernel()?;
        self.grid()?;
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(CliError::Input(format!("t-max must be positive, got {}", self.t_max)));
        }
        match &self.state {
            StateSpec::Triple(c) => c.check_physical(1e-12)?,
            StateSpec::Family(f) => {
                make_family_state(*f)?;
            }
            StateSpec::File(_) => {}
        }
        Ok(())
    }

    pub fn kernel(&self) -> CliResult<KernelParams> {
        Ok(KernelParams::new(self.a, self.amplitude, self.gamma)?)
    }

    pub fn decay(&self) -> CliResult<Decay> {
        if self.markovian {
            Ok(Decay::markovian(self.a)?)
        } else {
            Ok(Decay::Kernel(self.kernel()?))
        }
    }

    /// Grid in physical time, `t_max / a`.
    pub fn grid(&self) -> CliResult<TimeGrid> {
        Ok(TimeGrid::new(self.t_max / self.a, self.t_steps)?)
    }

    /// Parameters in `key=value` form for table headers.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("a".to_string(), self.a.to_string()),
            ("A".to_string(), self.amplitude.to_string()),
            ("gamma".to_string(), self.gamma.to_string()),
            ("markovian".to_string(), self.markovian.to_string()),
            ("channel_a".to_string(), self.channels.a.channel_name().to_string()),
            ("channel_b".to_string(), self.channels.b.channel_name().to_string()),
        ];
        out.extend(self.state_entries().into_iter().map(|(k, v)| (k.to_string(), v)));
        out.push(("t_max".to_string(), self.t_max.to_string()));
        out.push(("t_steps".to_string(), self.t_steps.to_string()));
        out.push(("mode".to_string(), value_name(self.mode)));
        out
    }

    fn state_entries(&self) -> Vec<(&'static str, String)> {
        match &self.state {
            StateSpec::Triple(c) => vec![("c", format!("{},{},{}", c.x, c.y, c.z))],
            StateSpec::File(p) => vec![("rho", p.display().to_string())],
            StateSpec::Family(f) => {
                let (name, param, branch) = match *f {
                    InitialFamily::Synchronized { x, branch } => (FamilyName::Synchronized, x.to_string(), branch),
                    InitialFamily::Proportional { x, branch } => (FamilyName::Proportional, x.to_string(), branch),
                    InitialFamily::SuddenChange { c_x, c_y, branch } => {
                        (FamilyName::SuddenChange, format!("{c_x},{c_y}"), branch)
                    }
                };
                vec![
                    ("family", family_name(name).to_string()),
                    ("param", param),
                    ("branch", branch_name(branch).to_string()),
                ]
            }
        }
    }

    pub fn to_ini(&self) -> Ini {
        let mut ini = Ini::new();
        ini.with_section(Some("kernel"))
            .set("a", self.a.to_string())
            .set("amplitude", self.amplitude.to_string())
            .set("gamma", self.gamma.to_string())
            .set("markovian", self.markovian.to_string());
        ini.with_section(Some("channels"))
            .set("a", self.channels.a.channel_name())
            .set("b", self.channels.b.channel_name());
        for (k, v) in self.state_entries() {
            ini.with_section(Some("state")).set(k, v);
        }
        ini.with_section(Some("grid"))
            .set("t_max", self.t_max.to_string())
            .set("t_steps", self.t_steps.to_string());
        let mut output = ini.with_section(Some("output"));
        output
            .set("format", value_name(self.format))
            .set("mode", value_name(self.mode));
        if let Some(out) = &self.out {
            output.set("out", out.display().to_string());
        }
        ini
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut buf = Vec::new();
        self.to_ini().write_to(&mut buf).map_err(|_| fmt::Error)?;
        f.write_str(&String::from_utf8_lossy(&buf))
    }
}

fn parse_value<T: FromStr>(section: &str, key: &str, v: &str) -> CliResult<T> {
    v.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("[{section}] {key}: cannot parse '{v}'")))
}

fn parse_enum<T: ValueEnum>(section: &str, key: &str, v: &str) -> CliResult<T> {
    T::from_str(v.trim(), false).map_err(|_| CliError::Input(format!("[{section}] {key}: unknown value '{v}'")))
}

/// Reads an INI configuration. Unknown sections or keys are errors.
pub fn parse_ini(text: &str) -> CliResult<Overrides> {
    let ini = Ini::load_from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
    let mut o = Overrides::default();
    for (section, props) in ini.iter() {
        let section = section.unwrap_or("");
        for (key, v) in props.iter() {
            let bad = |msg: String| CliError::Input(format!("[{section}] {key}: {msg}"));
            match (section, key) {
                ("kernel", "a") => o.a = Some(parse_value(section, key, v)?),
                ("kernel", "amplitude") => o.amplitude = Some(parse_value(section, key, v)?),
                ("kernel", "gamma") => o.gamma = Some(parse_value(section, key, v)?),
                ("kernel", "markovian") => o.markovian = Some(parse_value(section, key, v)?),
                ("channels", "a") => o.channel_a = Some(parse_axis(v.trim()).map_err(bad)?),
                ("channels", "b") => o.channel_b = Some(parse_axis(v.trim()).map_err(bad)?),
                ("state", "c") => o.c = Some(parse_triple(v).map_err(bad)?),
                ("state", "family") => o.family = Some(parse_enum(section, key, v)?),
                ("state", "param") => o.family_param = Some(v.trim().to_string()),
                ("state", "branch") => o.branch = Some(parse_branch(v.trim()).map_err(bad)?),
                ("state", "rho") => o.rho = Some(PathBuf::from(v.trim())),
                ("grid", "t_max") => o.t_max = Some(parse_value(section, key, v)?),
                ("grid", "t_steps") => o.t_steps = Some(parse_value(section, key, v)?),
                ("output", "format") => o.format = Some(parse_enum(section, key, v)?),
                ("output", "mode") => o.mode = Some(parse_enum(section, key, v)?),
                ("output", "out") => o.out = Some(PathBuf::from(v.trim())),
                _ => return Err(CliError::Input(format!("config: unknown key [{section}] {key}"))),
            }
        }
    }
    Ok(o)
}

pub fn load_ini(path: &Path) -> CliResult<Overrides> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_ini(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_give_symmetric_kernel() {
        let c = Overrides {
            a: Some(2.0),
            ..Default::default()
        }
        .resolve()
        .unwrap();
        assert_eq!((c.a, c.amplitude, c.gamma), (2.0, 2.0, 2.0));
        assert_eq!(c.state, RunConfig::default().state);
    }

    #[test]
    fn dump_round_trips() {
        let configs = [
            RunConfig::default(),
            RunConfig {
                a: 0.3,
                amplitude: 3.0,
                gamma: 0.003,
                markovian: true,
                channels: ChannelPair {
                    a: PauliAxis::Y,
                    b: PauliAxis::X,
                },
                state: StateSpec::Family(InitialFamily::SuddenChange {
                    c_x: 0.1,
                    c_y: 0.16,
                    branch: Branch::Lower,
                }),
                t_max: 3.0,
                t_steps: 777,
                out: Some(PathBuf::from("out/table.csv")),
                format: Format::Json,
                mode: Mode::Both,
            },
            RunConfig {
                state: StateSpec::Triple(BellCoefficients::new(-0.1, 1.0 / 3.0, 0.2)),
                ..Default::default()
            },
        ];
        for config in configs {
            let text = config.to_string();
            let back = parse_ini(&text).unwrap().resolve().unwrap();
            assert_eq!(back, config, "{text}");
        }
    }

    #[test]
    fn flags_override_file() {
        let file = parse_ini("[kernel]\na = 2\ngamma = 0.5\n[state]\nfamily = proportional\n").unwrap();
        let flags = Overrides {
            gamma: Some(0.25),
            c: Some(BellCoefficients::new(0.1, 0.2, 0.3)),
            ..Default::default()
        };
        let c = flags.over(file).resolve().unwrap();
        assert_eq!((c.a, c.amplitude, c.gamma), (2.0, 2.0, 0.25));
        assert_eq!(c.state, StateSpec::Triple(BellCoefficients::new(0.1, 0.2, 0.3)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_ini("[kernel]\nbeta = 1\n").is_err());
        assert!(parse_ini("[grid]\nt_steps = many\n").is_err());
        let unphysical = Overrides {
            c: Some(BellCoefficients::new(1.0, 1.0, 1.0)),
            ..Default::default()
        };
        assert!(unphysical.resolve().is_err());
        let too_big = Overrides {
            family: Some(FamilyName::Synchronized),
            family_param: Some("1.5".into()),
            ..Default::default()
        };
        assert!(too_big.resolve().is_err());
        let negative_a = Overrides {
            a: Some(-1.0),
            ..Default::default()
        };
        assert!(negative_a.resolve().is_err());
    }
}
