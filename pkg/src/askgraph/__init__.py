"""Graph analytics for semi-anonymous Q&A social networks."""

__version__ = "0.1.0"

from .corpus import (  # noqa: F401
    Corpus,
    CorpusStats,
    Lexicon,
    Profile,
    Question,
    TaggedQuestion,
    corpus_stats,
    load_corpus,
    load_lexicon,
    save_corpus,
    tag_question,
    tokenize,
)
from .wordgraph import (  # noqa: F401
    BipartiteGraph,
    CentralityScores,
    OneModeGraph,
    WordGraph,
    WordSet,
    build_bipartite,
    cooccurrence_distribution,
    eigenvector_centrality,
    project_users,
    project_words,
    select_top_words,
    word_neighborhood,
)
from .interaction import (  # noqa: F401
    InteractionGraph,
    MetricsReport,
    SimpleGraph,
    SplitGraphs,
    build_interaction_graph,
    ccdf,
    clustering,
    compute_metrics,
    degree_ratio_cdf,
    degree_vector,
    mean_local_clustering_vs_degree,
    mean_reciprocity_by_outdegree,
    reciprocity,
    split_graph,
    to_simple,
    top_overlap,
)
from .segmentation import (  # noqa: F401
    GroupReport,
    LabelFile,
    UserContentStats,
    classify_user,
    group_report,
    labeled_report,
    load_label_file,
    user_content_stats,
)
from .synth import (  # noqa: F401
    GenParams,
    SampledCorpus,
    SplitMix64,
    generate_corpus,
    snowball_sample,
    vocab_word_set,
)
