"""
Shared Visualization Utilities
==============================

Plotly figures for expanded derivation trees and reduction traces, used by
the explorer app. Tree layout comes from networkx.
"""

import networkx as nx
import pandas as pd
import plotly.express as px
import plotly.graph_objects as go

from bi_notation.errors import format_path


class VisualizationUtils:
    """Utility class for creating consistent visualizations"""

    COLORS = {
        "primary": "#1f77b4",
        "secondary": "#ff7f0e",
        "success": "#2ca02c",
        "warning": "#ff7f0e",
        "danger": "#d62728",
        "info": "#17a2b8",
        "light": "#f8f9fa",
        "dark": "#343a40",
    }

    # One color per inference family
    PALETTES = {
        "rules": {
            "Ax": "#2ca02c",
            "∧": "#1f77b4",
            "∨": "#17becf",
            "ω": "#9467bd",
            "∃": "#8c564b",
            "∀^": "#e377c2",
            "Cut": "#d62728",
            "Rep": "#7f7f7f",
            "Ω~": "#ff7f0e",
            "Ω": "#bcbd22",
        },
        "clauses": ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"],
    }

    @classmethod
    def rule_color(cls, label):
        for prefix, color in cls.PALETTES["rules"].items():
            if str(label).startswith(prefix):
                return color
        return cls.COLORS["dark"]

    @classmethod
    def tree_graph(cls, view):
        """networkx DiGraph of a TreeView; node keys are dotted paths"""
        graph = nx.DiGraph()
        for node in view.walk():
            key = format_path(node.path)
            graph.add_node(
                key,
                label=str(node.label),
                sequent=", ".join(sorted(str(f) for f in node.sequent)),
                truncated=node.truncated,
                layer=len(node.path),
            )
            if node.path:
                graph.add_edge(format_path(node.path[:-1]), key, index=str(node.path[-1]))
        return graph

    @classmethod
    def tree_figure(cls, view, title="Expanded derivation"):
        """
        Layered plot of an expanded derivation, one row per depth

        Args:
            view: TreeView returned by notation.expand
            title: Chart title

        Returns:
            plotly.graph_objects.Figure
        """
        graph = cls.tree_graph(view)
        positions = nx.multipartite_layout(graph, subset_key="layer", align="horizontal")

        edge_x, edge_y = [], []
        for source, target in graph.edges:
            edge_x += [positions[source][0], positions[target][0], None]
            edge_y += [positions[source][1], positions[target][1], None]

        nodes = list(graph.nodes(data=True))
        fig = go.Figure()
        fig.add_trace(
            go.Scatter(
                x=edge_x,
                y=edge_y,
                mode="lines",
                line=dict(color=cls.COLORS["info"], width=1.5),
                hoverinfo="skip",
                showlegend=False,
            )
        )
        fig.add_trace(
            go.Scatter(
                x=[positions[key][0] for key, _ in nodes],
                y=[positions[key][1] for key, _ in nodes],
                mode="markers+text",
                text=[data["label"] + (" …" if data["truncated"] else "") for _, data in nodes],
                textposition="top center",
                hovertext=[f"{key}<br>⊢ {data['sequent']}" for key, data in nodes],
                hoverinfo="text",
                marker=dict(
                    size=14,
                    color=[cls.rule_color(data["label"]) for _, data in nodes],
                    line=dict(width=1, color=cls.COLORS["dark"]),
                ),
                showlegend=False,
            )
        )
        fig.update_layout(
            title=title,
            title_font_size=16,
            title_font_color=cls.COLORS["dark"],
            xaxis=dict(visible=False),
            yaxis=dict(visible=False),
            plot_bgcolor="rgba(0,0,0,0)",
            paper_bgcolor="rgba(0,0,0,0)",
            height=500,
        )
        return fig

    @classmethod
    def trace_figure(cls, frame: pd.DataFrame, title="Reduction trace"):
        """Steps against position depth, colored by the clause that fired"""
        if frame.empty:
            fig = go.Figure()
            fig.add_annotation(x=0.5, y=0.5, text="<b>No reduction steps</b>", showarrow=False)
            fig.update_layout(xaxis=dict(visible=False), yaxis=dict(visible=False), height=200)
            return fig
        data = frame.assign(depth=frame["path"].map(lambda text: 0 if text == "root" else len(str(text).split("."))))
        fig = px.scatter(
            data,
            x="step",
            y="depth",
            color="clause",
            hover_data=["label", "sequent", "path"],
            title=title,
            color_discrete_sequence=cls.PALETTES["clauses"],
        )
        fig.update_traces(marker=dict(size=10))
        fig.update_layout(
            title_font_size=16,
            title_font_color=cls.COLORS["dark"],
            yaxis_title="position depth",
            plot_bgcolor="rgba(0,0,0,0)",
            paper_bgcolor="rgba(0,0,0,0)",
        )
        return fig

    @classmethod
    def clause_bar_chart(cls, frame: pd.DataFrame, title="Clauses fired"):
        counts = frame["clause"].value_counts().rename_axis("clause").reset_index(name="count")
        fig = px.bar(counts, x="clause", y="count", title=title, color_discrete_sequence=[cls.COLORS["primary"]])
        fig.update_layout(plot_bgcolor="rgba(0,0,0,0)", paper_bgcolor="rgba(0,0,0,0)")
        return fig
