// View models: pure reshaping of API payloads for rendering. Every number
// here is copied verbatim from a response; nothing is recomputed.

import {
    AttentionPoint,
    QueryFormState,
    StoryRow,
    WordCount,
    attentionUrl,
    storiesUrl,
    wordsUrl,
} from "./api.js";

export interface ExploreViewModel {
    attention: { date: string; count: number }[];
    totalLabel: number;
    words: { term: string; count: number }[];
    stories: {
        stories_id: number;
        title: string;
        url: string;
        publish_date: string;
        language: string;
    }[];
    empty: boolean;
}

export function buildExploreViewModel(
    attention: AttentionPoint[],
    words: WordCount[],
    stories: StoryRow[],
): ExploreViewModel {
    return {
        attention: attention.map((p) => ({ date: p.date, count: p.count })),
        totalLabel: attention.reduce((sum, p) => sum + p.count, 0),
        words: words.map((w) => ({ term: w.term, count: w.count })),
        stories: stories.map((s) => ({
            stories_id: s.stories_id,
            title: s.title,
            url: s.url,
            publish_date: s.publish_date,
            language: s.language,
        })),
        empty: attention.length === 0 && stories.length === 0,
    };
}

export type Panel = "attention" | "words" | "stories";

const PANEL_URLS: Record<Panel, (form: QueryFormState, format: "csv") => string> = {
    attention: attentionUrl,
    words: wordsUrl,
    stories: storiesUrl,
};

/** The CSV download is the API's own format=csv rendering of the panel. */
export function csvDownloadUrl(panel: Panel, form: QueryFormState): string {
    return PANEL_URLS[panel](form, "csv");
}

/** Filename embeds the query hash and the date range. */
export function csvDownloadFilename(panel: Panel, form: QueryFormState): string {
    const range = form.startDate && form.endDate ? `-${form.startDate}-${form.endDate}` : "";
    return `${panel}-${queryHash(form.query)}${range}.csv`;
}

/** FNV-1a over the query text; stable across sessions, short enough for a name. */
export function queryHash(query: string): string {
    let hash = 0x811c9dc5;
    for (let i = 0; i < query.length; i++) {
        hash ^= query.charCodeAt(i);
        hash = Math.imul(hash, 0x01000193) >>> 0;
    }
    return hash.toString(16).padStart(8, "0");
}
