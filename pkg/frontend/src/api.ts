// Single fetch-based client for the documented service endpoints.
// Every call funnels through request(), which records the path so tests
// can audit that no request leaves the documented API surface.

import type {
  AnalyticsPayload,
  ApiError,
  FeedbackPayload,
  ProfileDoc,
  ProfileView,
  SearchHit,
  SummaryPayload,
  TemplateDoc,
} from './types.js';
import type { FilterState } from './filters.js';
import { toParams } from './filters.js';

/** The documented API surface; the audit in tests checks paths against it. */
export const ENDPOINT_PATTERNS: RegExp[] = [
  /^\/api\/health$/,
  /^\/api\/researchers$/,
  /^\/api\/researchers\/[^/]+\/sync$/,
  /^\/api\/researchers\/[^/]+\/indicators$/,
  /^\/api\/templates$/,
  /^\/api\/templates\/[^/]+$/,
  /^\/api\/templates\/[^/]+\/state$/,
  /^\/api\/templates\/[^/]+\/grants$/,
  /^\/api\/templates\/[^/]+\/analytics$/,
  /^\/api\/templates\/[^/]+\/feedback$/,
  /^\/api\/profiles$/,
  /^\/api\/profiles\/[^/]+\/view$/,
  /^\/api\/profiles\/[^/]+\/elements\/[^/]+$/,
  /^\/api\/profiles\/[^/]+\/works\/[^/]+\/roles$/,
  /^\/api\/profiles\/[^/]+\/visibility$/,
  /^\/api\/search$/,
  /^\/api\/ai\/summarize$/,
];

export class RequestFailed extends Error {
  constructor(
    public status: number,
    public error: ApiError,
  ) {
    super(`${error.code}: ${error.message}`);
  }
}

export class ApiClient {
  recordedPaths: string[] = [];

  constructor(
    private baseUrl = '',
    private token: string | null = null,
  ) {}

  setToken(token: string | null) {
    this.token = token;
  }

  private async request<T>(
    method: string,
    path: string,
    params?: URLSearchParams,
    body?: unknown,
  ): Promise<T> {
    this.recordedPaths.push(path);
    const query = params && [...params].length ? `?${params.toString()}` : '';
    const headers: Record<string, string> = {};
    if (this.token) headers['Authorization'] = `Bearer ${this.token}`;
    if (body !== undefined) headers['Content-Type'] = 'application/json';
    const response = await fetch(`${this.baseUrl}${path}${query}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new RequestFailed(response.status, payload as ApiError);
    }
    return payload as T;
  }

  health() {
    return this.request<{ status: string }>('GET', '/api/health');
  }

  registerResearcher(orcid: string, displayName: string) {
    return this.request<{ researcher_id: string }>('POST', '/api/researchers', undefined, {
      orcid,
      display_name: displayName,
    });
  }

  syncResearcher(orcid: string) {
    return this.request<{ summary: string }>('POST', `/api/researchers/${orcid}/sync`);
  }

  indicators(orcid: string, filter: FilterState) {
    return this.request<Record<string, unknown>>(
      'GET',
      `/api/researchers/${orcid}/indicators`,
      toParams(filter),
    );
  }

  listTemplates() {
    return this.request<TemplateDoc[]>('GET', '/api/templates');
  }

  getTemplate(templateId: string) {
    return this.request<TemplateDoc>('GET', `/api/templates/${templateId}`);
  }

  createTemplate(doc: Partial<TemplateDoc>) {
    return this.request<TemplateDoc>('POST', '/api/templates', undefined, doc);
  }

  updateTemplate(templateId: string, doc: Partial<TemplateDoc>) {
    return this.request<TemplateDoc>('PUT', `/api/templates/${templateId}`, undefined, doc);
  }

  transitionTemplate(templateId: string, target: string) {
    return this.request<TemplateDoc>('POST', `/api/templates/${templateId}/state`, undefined, {
      target,
    });
  }

  grantPilotAccess(templateId: string, researcherId: string) {
    return this.request<unknown>('POST', `/api/templates/${templateId}/grants`, undefined, {
      researcher_id: researcherId,
    });
  }

  templateAnalytics(templateId: string) {
    return this.request<AnalyticsPayload>('GET', `/api/templates/${templateId}/analytics`);
  }

  submitFeedback(templateId: string, rating: number, comment: string) {
    return this.request<FeedbackPayload>(
      'POST',
      `/api/templates/${templateId}/feedback`,
      undefined,
      { rating, comment },
    );
  }

  listFeedback(templateId: string) {
    return this.request<FeedbackPayload[]>('GET', `/api/templates/${templateId}/feedback`);
  }

  createProfile(templateId: string) {
    return this.request<ProfileDoc>('POST', '/api/profiles', undefined, {
      template_id: templateId,
    });
  }

  profileView(profileId: string, filter: FilterState) {
    return this.request<ProfileView>('GET', `/api/profiles/${profileId}/view`, toParams(filter));
  }

  setElement(profileId: string, elementId: string, payload: Record<string, unknown>) {
    return this.request<ProfileDoc>(
      'PUT',
      `/api/profiles/${profileId}/elements/${elementId}`,
      undefined,
      payload,
    );
  }

  setRoles(profileId: string, workId: string, roles: string[]) {
    return this.request<ProfileDoc>(
      'PUT',
      `/api/profiles/${profileId}/works/${workId}/roles`,
      undefined,
      { roles },
    );
  }

  setVisibility(profileId: string, visibility: 'private' | 'public') {
    return this.request<ProfileDoc>(
      'PUT',
      `/api/profiles/${profileId}/visibility`,
      undefined,
      { visibility },
    );
  }

  search(query: string, limit = 20) {
    const params = new URLSearchParams({ q: query, limit: String(limit) });
    return this.request<SearchHit[]>('GET', '/api/search', params);
  }

  summarize(profileId: string, elementId: string, style: string, maxWords: number, optIn: boolean) {
    return this.request<SummaryPayload>('POST', '/api/ai/summarize', undefined, {
      profile_id: profileId,
      element_id: elementId,
      style,
      max_words: maxWords,
      opt_in: optIn,
    });
  }
}
