import type { DocumentObj, DocumentSummary, SelectionAck } from "./types";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const message =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : response.statusText;
    throw new ApiError(response.status, message);
  }
  return body as T;
}

/** Thin client for the engine's validation endpoints. */
export class ApiClient {
  constructor(private base: string = "") {}

  async listDocuments(): Promise<DocumentSummary[]> {
    const body = await expectJson<{ documents: DocumentSummary[] }>(
      await fetch(`${this.base}/api/documents`),
    );
    return body.documents;
  }

  async getDocument(id: string): Promise<DocumentObj> {
    return expectJson<DocumentObj>(
      await fetch(`${this.base}/api/documents/${encodeURIComponent(id)}`),
    );
  }

  async submitSelection(
    id: string,
    span: number,
    choice: { index: number } | { text: string },
  ): Promise<SelectionAck> {
    return expectJson<SelectionAck>(
      await fetch(`${this.base}/api/documents/${encodeURIComponent(id)}/selections`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ span, ...choice }),
      }),
    );
  }

  async getExport(id: string, includeNotes = false): Promise<string> {
    const suffix = includeNotes ? "?include_notes=1" : "";
    const body = await expectJson<{ text: string }>(
      await fetch(`${this.base}/api/documents/${encodeURIComponent(id)}/export${suffix}`),
    );
    return body.text;
  }
}
