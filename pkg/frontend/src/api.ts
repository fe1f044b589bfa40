// API types and URL builders. The Explorer never computes on story data;
// everything it shows comes straight out of these response payloads.

export interface AttentionPoint {
    date: string;
    count: number;
}

export interface WordCount {
    term: string;
    count: number;
}

export interface StoryRow {
    stories_id: number;
    media_id: number;
    title: string;
    publish_date: string;
    collect_date: string;
    url: string;
    guid: string;
    language: string;
    tags: number[];
}

export interface ParseErrorDetail {
    error: string;
    position: number;
}

export interface TopicInfo {
    topics_id: number;
    name: string;
    seed_query: string;
    start_date: string;
    end_date: string;
    max_rounds: number;
    spider?: { state: string; error?: string };
    story_count?: number;
}

export interface QueryFormState {
    query: string;
    startDate: string;
    endDate: string;
    mediaIds: number[];
    split: "day" | "week" | "month";
}

export class ApiError extends Error {
    constructor(public status: number, public detail: ParseErrorDetail | string) {
        super(typeof detail === "string" ? detail : detail.error);
    }
}

/** The query actually sent: the form's date range and media selection are
 * folded into the boolean query so the API stays the single source of truth.
 * The range folds to an OR of publish_day filters; desk-scale ranges are
 * short enough that the clause list stays small. */
export function effectiveQuery(form: QueryFormState): string {
    let q = form.query.trim();
    if (form.mediaIds.length === 1) {
        q = `(${q}) AND media_id:${form.mediaIds[0]}`;
    } else if (form.mediaIds.length > 1) {
        const media = form.mediaIds.map((m) => `media_id:${m}`).join(" OR ");
        q = `(${q}) AND (${media})`;
    }
    if (form.startDate && form.endDate) {
        const days = enumerateDays(form.startDate, form.endDate)
            .map((d) => `publish_day:${d}`)
            .join(" OR ");
        q = `(${q}) AND (${days})`;
    }
    return q;
}

export function enumerateDays(start: string, end: string): string[] {
    const out: string[] = [];
    const cursor = new Date(start + "T00:00:00Z");
    const last = new Date(end + "T00:00:00Z");
    while (cursor <= last) {
        out.push(cursor.toISOString().slice(0, 10));
        cursor.setUTCDate(cursor.getUTCDate() + 1);
    }
    return out;
}

function params(entries: Record<string, string>): string {
    return new URLSearchParams(entries).toString();
}

export function attentionUrl(form: QueryFormState, format?: "csv"): string {
    const entries: Record<string, string> = { q: effectiveQuery(form), split: form.split };
    if (format) entries.format = format;
    return `/api/v2/stories_public/count?${params(entries)}`;
}

export function wordsUrl(form: QueryFormState, format?: "csv"): string {
    const entries: Record<string, string> = { q: effectiveQuery(form), num_words: "50" };
    if (format) entries.format = format;
    return `/api/v2/wc/list?${params(entries)}`;
}

export function storiesUrl(form: QueryFormState, format?: "csv"): string {
    const entries: Record<string, string> = { q: effectiveQuery(form), rows: "20" };
    if (format) entries.format = format;
    return `/api/v2/stories_public/list?${params(entries)}`;
}

export async function getJson<T>(base: string, url: string): Promise<T> {
    const resp = await fetch(base + url);
    if (!resp.ok) {
        const body = await resp.json().catch(() => ({ detail: resp.statusText }));
        throw new ApiError(resp.status, body.detail);
    }
    return resp.json() as Promise<T>;
}

export async function postJson<T>(base: string, url: string, body: unknown): Promise<T> {
    const resp = await fetch(base + url, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
    });
    if (!resp.ok) {
        const payload = await resp.json().catch(() => ({ detail: resp.statusText }));
        throw new ApiError(resp.status, payload.detail);
    }
    return resp.json() as Promise<T>;
}
