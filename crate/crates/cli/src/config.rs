//! `key = value` config files and the effective-config echo.
//!
//! Config entries are turned into `--key=value` arguments and placed right
//! after the subcommand name, ahead of everything typed on the command line.
//! Subcommands let later occurrences override earlier ones, so explicit
//! flags win.

use std::ffi::OsString;
use std::fmt::Display;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub fn parse_config(text: &str, origin: &Path) -> Result<Vec<(String, String)>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{}:{}: expected `key = value`", origin.display(), idx + 1);
        };
        let key = key.trim().replace('_', "-");
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            bail!("{}:{}: bad key `{}`", origin.display(), idx + 1, key);
        }
        if key == "config" {
            bail!(
                "{}:{}: config files cannot include other config files",
                origin.display(),
                idx + 1
            );
        }
        entries.push((key, value.trim().to_string()));
    }
    Ok(entries)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = a.to_str().and_then(|s| s.strip_prefix("--config=")) {
            return Some(rest.into());
        }
    }
    None
}

/// Returns `args` with the entries of any `--config` file spliced in after
/// the subcommand.
pub fn expand_args(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    if args.len() < 2 {
        return Ok(args);
    }
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let mut out: Vec<OsString> = args[..2].to_vec();
    out.extend(
        parse_config(&text, path)?
            .into_iter()
            .map(|(k, v)| OsString::from(format!("--{k}={v}"))),
    );
    out.extend_from_slice(&args[2..]);
    Ok(out)
}

/// Effective parameters of a run, printed as a config file that reproduces
/// it.
#[derive(Default)]
pub struct Echo(Vec<(&'static str, String)>);

impl Echo {
    pub fn new(command: &str) -> Self {
        let mut e = Echo::default();
        e.0.push(("# command", command.to_string()));
        e
    }

    pub fn set(mut self, key: &'static str, value: impl Display) -> Self {
        self.0.push((key, value.to_string()));
        self
    }

    pub fn opt(self, key: &'static str, value: Option<impl Display>) -> Self {
        match value {
            Some(v) => self.set(key, v),
            None => self,
        }
    }

    pub fn print(&self) {
        for (k, v) in &self.0 {
            println!("{k} = {v}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_entries_and_comments() {
        let text = "# run\nmethod = aa  # trailing\n\ngrid_step=0.05\n";
        let got = parse_config(text, Path::new("c")).unwrap();
        assert_eq!(
            got,
            vec![
                ("method".into(), "aa".into()),
                ("grid-step".into(), "0.05".into())
            ]
        );
        assert!(parse_config("method aa\n", Path::new("c")).is_err());
        assert!(parse_config("a b = 1\n", Path::new("c")).is_err());
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "method = pa\neps = 0.5\n").unwrap();
        let args = os(&[
            "linkpred",
            "score",
            "--config",
            path.to_str().unwrap(),
            "--method",
            "aa",
        ]);
        let got = expand_args(args).unwrap();
        assert_eq!(
            got[..4],
            os(&["linkpred", "score", "--method=pa", "--eps=0.5"])[..]
        );
        assert_eq!(got.last().unwrap(), "aa");
    }

    #[test]
    fn untouched_without_config() {
        let args = os(&["linkpred", "inspect", "--edges", "g"]);
        assert_eq!(expand_args(args.clone()).unwrap(), args);
    }
}
