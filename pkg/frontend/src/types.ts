// Payload shapes mirroring the service API JSON.

export type WorkTypeName = 'publication' | 'dataset' | 'software' | 'other';
export type TemplateStateName = 'draft' | 'piloting' | 'published';
export type ElementKindName =
  | 'narrative'
  | 'indicator_panel'
  | 'contribution_list'
  | 'dropdown'
  | 'text_field';

export interface WorkPayload {
  work_id: string;
  doi: string | null;
  title: string;
  work_type: WorkTypeName;
  year: number | null;
  venue: string | null;
  authors: string[];
  citation_count: number | null;
  popularity_score: number | null;
  influence_score: number | null;
  access: string;
  license: string | null;
  topics: { topic_id: string; label: string }[];
  roles: string[];
}

export interface FacetEntry {
  value: string | number;
  count: number;
  label?: string;
}

export interface IndicatorRow {
  key: string;
  value: number | string;
}

export interface ViewElement {
  element_id: string;
  kind: ElementKindName;
  label: string;
  required: boolean;
  text?: string;
  ai_assist_enabled?: boolean;
  selected?: string | null;
  options?: string[];
  indicators?: IndicatorRow[];
  works?: WorkPayload[];
  total?: number;
  facets?: Record<string, FacetEntry[]>;
}

export interface ProfileView {
  profile_id: string;
  researcher: { researcher_id: string; orcid: string; display_name: string };
  template_id: string;
  template_version: number;
  visibility: 'private' | 'public';
  active_filter: {
    topics: string[];
    work_types: string[];
    licenses: string[];
    access: string | null;
    year_range: number[] | null;
  };
  completeness: number;
  elements: ViewElement[];
  revision: number;
}

export interface TemplateElementDoc {
  element_id: string;
  kind: ElementKindName;
  label: string;
  required: boolean;
  config: Record<string, unknown>;
}

export interface TemplateDoc {
  template_id: string;
  name: string;
  description: string;
  state: TemplateStateName;
  version: number;
  elements: TemplateElementDoc[];
}

export interface SearchHit {
  researcher_id: string;
  display_name: string;
  public_profile_ids: string[];
}

export interface AnalyticsPayload {
  template_id: string;
  total_users: number;
  element_completion: Record<string, { filled: number; rate: number | null }>;
}

export interface FeedbackPayload {
  feedback_id: string;
  template_id: string;
  researcher_id: string;
  rating: number;
  comment: string;
  submitted_at: string;
}

export interface SummaryPayload {
  text: string;
  backend: 'generative' | 'deterministic';
  disclaimer: string;
}

export interface ProfileDoc {
  profile_id: string;
  researcher_id: string;
  template_id: string;
  template_version: number;
  visibility: string;
  completeness: number;
  revision: number;
}

export interface ApiError {
  code: string;
  message: string;
}
