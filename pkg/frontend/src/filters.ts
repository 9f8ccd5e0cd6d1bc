// Facet selection state and its round trip into API query parameters.
// The client never computes indicators itself: every change re-fetches
// the server view built from these parameters.

export interface FilterState {
  topics: string[];
  types: string[];
  licenses: string[];
  access: string | null;
  yearMin: number | null;
  yearMax: number | null;
}

export function emptyFilter(): FilterState {
  return { topics: [], types: [], licenses: [], access: null, yearMin: null, yearMax: null };
}

export function isEmpty(state: FilterState): boolean {
  return (
    state.topics.length === 0 &&
    state.types.length === 0 &&
    state.licenses.length === 0 &&
    state.access === null &&
    state.yearMin === null &&
    state.yearMax === null
  );
}

function toggled(values: string[], value: string): string[] {
  return values.includes(value)
    ? values.filter((v) => v !== value)
    : [...values, value].sort();
}

/** Toggle one facet value; facet names match the server's facet panel keys. */
export function toggleFacet(state: FilterState, facet: string, value: string | number): FilterState {
  const next = { ...state };
  switch (facet) {
    case 'topics':
      next.topics = toggled(state.topics, String(value));
      break;
    case 'work_type':
      next.types = toggled(state.types, String(value));
      break;
    case 'license':
      next.licenses = toggled(state.licenses, String(value));
      break;
    case 'access':
      next.access = state.access === String(value) ? null : String(value);
      break;
    case 'year': {
      const year = Number(value);
      const active = state.yearMin === year && state.yearMax === year;
      next.yearMin = active ? null : year;
      next.yearMax = active ? null : year;
      break;
    }
    default:
      throw new Error(`unknown facet ${facet}`);
  }
  return next;
}

export function isActive(state: FilterState, facet: string, value: string | number): boolean {
  switch (facet) {
    case 'topics':
      return state.topics.includes(String(value));
    case 'work_type':
      return state.types.includes(String(value));
    case 'license':
      return state.licenses.includes(String(value));
    case 'access':
      return state.access === String(value);
    case 'year':
      return state.yearMin === Number(value) && state.yearMax === Number(value);
    default:
      return false;
  }
}

/** Serialize for GET /profiles/{id}/view and /researchers/{orcid}/indicators. */
export function toParams(state: FilterState): URLSearchParams {
  const params = new URLSearchParams();
  if (state.topics.length) params.set('topics', state.topics.join(','));
  if (state.types.length) params.set('types', state.types.join(','));
  if (state.licenses.length) params.set('licenses', state.licenses.join(','));
  if (state.access) params.set('access', state.access);
  if (state.yearMin !== null) params.set('year_min', String(state.yearMin));
  if (state.yearMax !== null) params.set('year_max', String(state.yearMax));
  return params;
}

/** Active selections as removable chips: [facet, value] pairs. */
export function chips(state: FilterState): Array<[string, string]> {
  const out: Array<[string, string]> = [];
  for (const t of state.topics) out.push(['topics', t]);
  for (const t of state.types) out.push(['work_type', t]);
  for (const l of state.licenses) out.push(['license', l]);
  if (state.access) out.push(['access', state.access]);
  if (state.yearMin !== null) out.push(['year', String(state.yearMin)]);
  return out;
}
