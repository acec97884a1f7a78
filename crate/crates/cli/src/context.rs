use dgrams_core::diagram::{validate_morphism, Category, Morphism};
use dgrams_core::evaluator::Evaluator;
use dgrams_core::repgraph::{cyclic, group_graph, resolve_graph, resolve_group, GroupData, RepGraph};

use crate::dsl::{parse_dsl, DslContext};
use crate::{CategoryArgs, CliError};

/// A resolved category: the module data it is evaluated on and, outside
/// `C_n^irr`, its representation graph.
#[derive(Debug, Clone)]
pub struct Context {
    cn: Option<u32>,
    star: bool,
    group: GroupData,
    graph: Option<RepGraph>,
}

impl Context {
    pub fn resolve(args: &CategoryArgs) -> Result<Self, CliError> {
        if let Some(n) = args.cn {
            if args.graph.is_some() {
                return Err(CliError::Usage("--cn takes no --graph".into()));
            }
            let group = cyclic(n).map_err(|e| CliError::Usage(e.to_string()))?;
            return Ok(Context {
                cn: Some(n),
                star: false,
                group,
                graph: None,
            });
        }
        let group_name = match (&args.group, &args.graph) {
            (Some(g), _) => g.clone(),
            (None, Some(g)) => g.clone(),
            (None, None) => {
                return Err(CliError::Usage(
                    "a category is required: --cn N, --group NAME [--graph NAME] [--star]".into(),
                ))
            }
        };
        let group = resolve_group(&group_name).map_err(|e| match args.group {
            Some(_) => CliError::Usage(e.to_string()),
            None => CliError::Usage(format!("{e}; pass --group to evaluate on {group_name:?}")),
        })?;
        let graph = match &args.graph {
            Some(g) => resolve_graph(g),
            None => group_graph(&group),
        }
        .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Context {
            cn: None,
            star: args.star,
            group,
            graph: Some(graph),
        })
    }

    pub fn category(&self) -> Category<'_> {
        match (&self.graph, self.cn) {
            (_, Some(n)) => Category::CnIrr(n),
            (Some(g), None) if self.star => Category::Star(g),
            (Some(g), None) => Category::Dgrams(g),
            (None, None) => unreachable!("non-cyclic contexts carry a graph"),
        }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn cn(&self) -> Option<u32> {
        self.cn
    }

    pub fn dsl(&self) -> DslContext {
        DslContext {
            conductor: self.group.conductor,
            cyclic: self.cn,
        }
    }

    pub fn evaluator(&self) -> Result<Evaluator<'_>, CliError> {
        let ev = match self.cn {
            Some(n) => Evaluator::cyclic(n),
            None => Evaluator::new(self.category(), self.group.clone()),
        };
        ev.map_err(|e| CliError::Failed(format!("cannot set up {}: {e}", self.category().name())))
    }

    /// Parses an expression and checks every cell against the category.
    pub fn parse(&self, text: &str) -> Result<Morphism, CliError> {
        let m = parse_dsl(text, self.dsl()).map_err(|e| CliError::Parse(e.to_string()))?;
        let report = validate_morphism(&m, &self.category());
        if !report.ok() {
            return Err(CliError::Parse(format!(
                "not a morphism of {}: {}",
                self.category().name(),
                report.problems.join("; ")
            )));
        }
        Ok(m)
    }
}
