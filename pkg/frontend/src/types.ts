export type Confidence = 'sure' | 'moderatelySure' | 'improbable';
export type Decision = 'pending' | 'validated' | 'deleted';

/** One review-table row, exactly as the service's list_links returns it. */
export interface LinkRow {
  id: string;
  elementKind: string;
  leftName: string;
  rightName: string;
  synOrSem: string;
  explanation: string;
  global: string;
  local: string;
  level: string;
  confidence: Confidence;
  homonym: boolean;
  hyponym: boolean;
  decision: Decision;
}

export interface SessionSummary {
  id: string;
  createdAt: string;
  linkCount: number;
}

export interface ExportDocument {
  correspondence: { links: Array<{ id: string }> };
  unmatched: { leftOnly: string[]; rightOnly: string[] };
  pending: number;
}
