// HTML/SVG string renderers; pure functions so snapshot tests need no DOM.

import { ParseErrorDetail, TopicInfo } from "./api.js";
import { ExploreViewModel } from "./viewmodel.js";

export function escapeHtml(s: string): string {
    return s
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

const CHART_WIDTH = 640;
const CHART_HEIGHT = 180;
const BASELINE = CHART_HEIGHT - 20;

export function renderAttentionChart(points: { date: string; count: number }[]): string {
    if (points.length === 0) {
        return '<div class="empty">No stories matched this query.</div>';
    }
    const max = Math.max(...points.map((p) => p.count), 1);
    const barWidth = Math.max(2, Math.floor(CHART_WIDTH / points.length) - 2);
    const bars = points
        .map((p, i) => {
            const height = Math.round((p.count / max) * (BASELINE - 10));
            const x = i * (barWidth + 2);
            const y = BASELINE - height;
            return (
                `<rect x="${x}" y="${y}" width="${barWidth}" height="${height}" class="bar">` +
                `<title>${escapeHtml(p.date)}: ${p.count}</title></rect>`
            );
        })
        .join("");
    const first = escapeHtml(points[0].date);
    const last = escapeHtml(points[points.length - 1].date);
    return (
        `<svg viewBox="0 0 ${CHART_WIDTH} ${CHART_HEIGHT}" role="img" aria-label="stories over time">` +
        bars +
        `<text x="0" y="${CHART_HEIGHT - 4}" class="axis">${first}</text>` +
        `<text x="${CHART_WIDTH}" y="${CHART_HEIGHT - 4}" text-anchor="end" class="axis">${last}</text>` +
        `</svg>`
    );
}

export function renderWordList(words: { term: string; count: number }[]): string {
    if (words.length === 0) {
        return '<div class="empty">No terms to show.</div>';
    }
    const rows = words
        .map((w) => `<li><span class="term">${escapeHtml(w.term)}</span><span class="count">${w.count}</span></li>`)
        .join("");
    return `<ol class="words">${rows}</ol>`;
}

export function renderStoryTable(
    stories: { stories_id: number; title: string; url: string; publish_date: string; language: string }[],
): string {
    if (stories.length === 0) {
        return '<div class="empty">No sample stories.</div>';
    }
    const rows = stories
        .map(
            (s) =>
                `<tr><td>${s.stories_id}</td>` +
                `<td><a href="${escapeHtml(s.url)}">${escapeHtml(s.title)}</a></td>` +
                `<td>${escapeHtml(s.publish_date)}</td><td>${escapeHtml(s.language)}</td></tr>`,
        )
        .join("");
    return (
        '<table class="stories"><thead><tr>' +
        "<th>id</th><th>title</th><th>published</th><th>lang</th>" +
        `</tr></thead><tbody>${rows}</tbody></table>`
    );
}

export function renderExplore(vm: ExploreViewModel): string {
    if (vm.empty) {
        return '<div class="empty big">No results. Loosen the query or widen the dates.</div>';
    }
    return (
        `<section id="attention-panel"><h2>Attention (${vm.totalLabel} stories)</h2>` +
        renderAttentionChart(vm.attention) +
        `</section><section id="words-panel"><h2>Top words</h2>` +
        renderWordList(vm.words) +
        `</section><section id="stories-panel"><h2>Sample stories</h2>` +
        renderStoryTable(vm.stories) +
        `</section>`
    );
}

/** Inline parse error: the caret sits under the offending character. */
export function renderParseError(query: string, detail: ParseErrorDetail): string {
    const caretLine = " ".repeat(Math.max(0, detail.position)) + "^";
    return (
        `<div class="parse-error"><p>Query error: ${escapeHtml(detail.error)} at position ${detail.position}</p>` +
        `<pre>${escapeHtml(query)}\n${escapeHtml(caretLine)}</pre></div>`
    );
}

export function renderRetryBanner(message: string): string {
    return (
        `<div class="retry-banner">Request failed: ${escapeHtml(message)} ` +
        `<button id="retry">Retry</button></div>`
    );
}

export function renderTopicStatus(topic: TopicInfo): string {
    const state = topic.spider?.state ?? "idle";
    const pieces = [
        `<h2>Topic ${topic.topics_id}: ${escapeHtml(topic.name)}</h2>`,
        `<p>Query: <code>${escapeHtml(topic.seed_query)}</code></p>`,
        `<p>Range: ${escapeHtml(topic.start_date)} to ${escapeHtml(topic.end_date)}</p>`,
        `<p class="state state-${state}">Spider: ${state}</p>`,
    ];
    if (state === "error" && topic.spider?.error) {
        pieces.push(`<p class="error">${escapeHtml(topic.spider.error)}</p>`);
    }
    if (state === "done") {
        pieces.push(`<p>${topic.story_count ?? 0} stories collected.</p>`);
        pieces.push(
            `<p><a href="/api/v2/topics/${topic.topics_id}/download">Download dataset (zip)</a></p>`,
        );
    }
    return `<div class="topic-status">${pieces.join("")}</div>`;
}

export function renderAlreadyRunning(topicsId: number): string {
    return `<div class="retry-banner">A spider run is already in progress for topic ${topicsId}.</div>`;
}
