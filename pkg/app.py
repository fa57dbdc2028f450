"""
BI Notation Explorer - Main Application
=======================================

Streamlit page for inspecting proof terms: pick a corpus entry or paste an
S-expression, check it, expand the tree it denotes and normalize it with an
audited trace.
"""

import streamlit as st

from bi_notation.calculus import degree, end_sequent, is_bi_minus, is_proper
from bi_notation.checker import audit_trace, check_local
from bi_notation.config import get_settings
from bi_notation.corpus import SCENARIOS, check_scenario, sample_proofs, scenario
from bi_notation.errors import CalculusError
from bi_notation.lang import format_sequent
from bi_notation.notation import expand, rule_of
from bi_notation.reduction import gate, normalize, prepare
from bi_notation.sexpr import parse_derivation, render
from shared_utilities import DerivationGenerator, TraceReportGenerator, VisualizationUtils

# Page Configuration
st.set_page_config(
    page_title="BI Notation Explorer",
    page_icon="🌳",
    layout="wide",
    initial_sidebar_state="expanded",
)


@st.cache_resource
def init_utilities():
    return {
        "reports": TraceReportGenerator(),
        "generator": DerivationGenerator(),
    }


utils = init_utilities()
settings = get_settings()
proofs = sample_proofs()

st.markdown(
    """
<style>
    .main-header {
        font-size: 2.5rem;
        color: #1f77b4;
        text-align: center;
        margin-bottom: 1.5rem;
        font-weight: bold;
    }
</style>
""",
    unsafe_allow_html=True,
)

# Sidebar
st.sidebar.markdown("## 📚 Corpus")
source = st.sidebar.radio("Source", ["Sample proof", "Scenario", "Random", "Paste"])
chosen_scenario = None
if source == "Sample proof":
    name = st.sidebar.selectbox("Proof", list(proofs))
    initial_text = render(proofs[name], pretty=True)
elif source == "Scenario":
    name = st.sidebar.selectbox("Scenario", list(SCENARIOS))
    chosen_scenario = scenario(name)
    initial_text = render(chosen_scenario.input, pretty=True)
elif source == "Random":
    seed = st.sidebar.number_input("Seed", min_value=0, value=42, step=1)
    initial_text = render(DerivationGenerator(seed=int(seed)).derivation(), pretty=True)
else:
    initial_text = "(ax (seq (eq 0 0)))"

st.sidebar.markdown("## ⚙️ Settings")
depth = st.sidebar.slider("Expansion depth", 0, 6, settings.depth)
max_steps = st.sidebar.number_input("Reduction budget", min_value=1, value=min(settings.max_steps, 2000), step=100)

st.markdown('<h1 class="main-header">🌳 BI Notation Explorer</h1>', unsafe_allow_html=True)

text = st.text_area("Derivation (S-expression)", initial_text, height=220)

try:
    d = parse_derivation(text)
except CalculusError as exc:
    st.error(f"❌ {type(exc).__name__}: {exc}")
    st.stop()

# Check report
st.markdown("## 🔍 Check")
col1, col2, col3, col4 = st.columns(4)
with col1:
    st.metric("Last rule", str(rule_of(d)))
with col2:
    st.metric("Degree", degree(d))
with col3:
    st.metric("Proper", "yes" if is_proper(d) else "no")
with col4:
    st.metric("Gate", "open" if gate(d).eligible else "closed")
st.markdown(f"**End-sequent:** ⊢ {format_sequent(end_sequent(d))}")
if not is_proper(d):
    st.error(f"❌ {is_proper(d)}")
    st.stop()
local = check_local(d)
st.markdown(f"**Local checks:** {'✅' if local.overall else '🚨'} {local.summary().splitlines()[0]}")

if chosen_scenario is not None:
    verdict = check_scenario(chosen_scenario)
    st.markdown(f"**Scenario {chosen_scenario.name}:** {chosen_scenario.description}")
    st.markdown(f"{'✅' if verdict.overall else '🚨'} {verdict.summary().splitlines()[0]}")

# Tree
st.markdown("## 🌳 Denoted tree")
view = expand(d, depth, settings.omega_picks, settings.witness_budget)
st.plotly_chart(VisualizationUtils.tree_figure(view), use_container_width=True)
with st.expander("Node records"):
    st.dataframe(utils["reports"].tree_frame(view), use_container_width=True)

# Normalization
st.markdown("## 🔁 Normalization")
runnable = d
if not gate(d).eligible:
    if is_bi_minus(d) and is_proper(d):
        try:
            runnable = prepare(d)
            st.info("ℹ️ Input wrapped in Ew so that reduction applies")
        except CalculusError as exc:
            st.warning(f"⚠️ Cannot prepare input: {exc}")
            runnable = None
    else:
        st.warning(f"⚠️ {gate(d)}")
        runnable = None

if runnable is not None and st.button("Normalize", type="primary"):
    trace = normalize(runnable, int(max_steps))
    verdict = audit_trace(trace)
    frame = utils["reports"].trace_frame(trace, verdict)

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Steps", len(trace.steps))
    with col2:
        st.metric("Lazy families", trace.lazy_families)
    with col3:
        st.metric("Audit", "PASS" if verdict.overall else "FAIL")

    for insight in utils["reports"].generate_insights(frame):
        st.markdown(insight)

    if not frame.empty:
        col1, col2 = st.columns([2, 1])
        with col1:
            st.plotly_chart(VisualizationUtils.trace_figure(frame), use_container_width=True)
        with col2:
            st.plotly_chart(VisualizationUtils.clause_bar_chart(frame), use_container_width=True)
        st.dataframe(frame.drop(columns=["before", "after"]), use_container_width=True)
    st.markdown("**Normal form**")
    st.code(render(trace.final, pretty=True), language="lisp")

st.markdown("---")
st.markdown("Run `python -m bi_notation --help` for the command line tools.")
