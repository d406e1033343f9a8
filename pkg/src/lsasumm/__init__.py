"""Extractive summarization with latent semantic analysis.

Typical use::

    from lsasumm import RawDocument, SummarizerConfig, ExperimentCode, summarize_text

    config = SummarizerConfig(code=ExperimentCode.parse("RAWEF4ADJ"), language="ar")
    doc, summary = summarize_text(RawDocument("d1", text), config, ratio=0.3)
"""

from .errors import (
    ConfigError,
    CorpusError,
    DegenerateSpectrum,
    EmptyCorpus,
    EmptyDocument,
    EmptyVocabulary,
    InvalidCode,
    LsaSummError,
    MissingTags,
    NoReferences,
    NumericalFailure,
)
from .experiment import (
    CorpusManifest,
    ExperimentCode,
    RunReport,
    Selector,
    SummarizerConfig,
    budget_for,
    load_manifest,
    parse_experiment_code,
    run_experiment,
    summarize_document,
    summarize_text,
)
from .lsa import FilteredSigma, SvdResult, decompose, filter_sigma, topic_threshold
from .morphology import MorphologyMode, normalize_term
from .rouge import EvalConfig, RougeScore, ngrams, rouge_n
from .selection import Summary, ess_lsa_select, gong_liu_select, lead_select, steinberger_select
from .text import (
    Document,
    PipelineConfig,
    RawDocument,
    Sentence,
    TaggedToken,
    build_document,
    pos_filter,
    remove_stopwords,
    split_sentences,
    tokenize,
)
from .weighting import (
    Adjacency,
    GlobalScheme,
    LocalScheme,
    TermSentenceMatrix,
    TermStats,
    WeightConfig,
    adjacent_weight,
    build_matrix,
    global_weight,
    local_weight,
)

__version__ = "0.1.0"
