// API client: one in-flight request per panel, stale responses discarded by
// request token. `fetchImpl` is injectable so the logic is testable without
// a browser or server.

import { JobRecord, ProblemDocument, SolutionDocument, WorkspaceJobResult } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
    public field?: string,
  ) {
    super(message);
  }
}

export class StaleResponseError extends Error {
  constructor() {
    super("response superseded by a newer request");
  }
}

async function parseJson(response: Response): Promise<any> {
  const text = await response.text();
  try {
    return text ? JSON.parse(text) : null;
  } catch {
    throw new ApiError(`malformed response (${response.status})`, response.status);
  }
}

export class ApiClient {
  private tokens = new Map<string, number>();

  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
    private pollIntervalMs = 300,
  ) {}

  /** bump and return the current token for a panel */
  private nextToken(panel: string): number {
    const token = (this.tokens.get(panel) ?? 0) + 1;
    this.tokens.set(panel, token);
    return token;
  }

  private ensureFresh(panel: string, token: number): void {
    if (this.tokens.get(panel) !== token) throw new StaleResponseError();
  }

  private async post(path: string, body: unknown): Promise<Response> {
    return this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  /** solve; 422 still resolves (infeasible best attempt), 400 rejects */
  async solve(problem: ProblemDocument): Promise<SolutionDocument> {
    const token = this.nextToken("solve");
    const response = await this.post("/api/solve", problem);
    const data = await parseJson(response);
    this.ensureFresh("solve", token);
    if (response.status === 200 || response.status === 422) {
      return data as SolutionDocument;
    }
    if (response.status === 202) {
      const job = await this.pollJob<SolutionDocument>(data.jobId);
      this.ensureFresh("solve", token);
      if (job.status === "failed" || !job.result) {
        throw new ApiError(job.error ?? "solve failed", 500);
      }
      return job.result;
    }
    throw new ApiError(data?.detail ?? `solve failed (${response.status})`, response.status, data?.field);
  }

  async tradeoff(problem: ProblemDocument, angles: number[]): Promise<SolutionDocument[]> {
    const token = this.nextToken("tradeoff");
    const response = await this.post("/api/tradeoff", { problem, angles });
    const data = await parseJson(response);
    this.ensureFresh("tradeoff", token);
    if (response.status !== 200) {
      throw new ApiError(data?.detail ?? `trade-off failed (${response.status})`, response.status, data?.field);
    }
    return (data.solutions ?? []) as SolutionDocument[];
  }

  /**
   * Launch a workspace scan and poll until done, invoking onUpdate with each
   * job snapshot (samples stream in while running).
   */
  async workspace(
    body: Record<string, unknown>,
    onUpdate?: (job: JobRecord<WorkspaceJobResult>) => void,
  ): Promise<WorkspaceJobResult> {
    const token = this.nextToken("workspace");
    const response = await this.post("/api/workspace", body);
    const data = await parseJson(response);
    this.ensureFresh("workspace", token);
    if (response.status !== 202) {
      throw new ApiError(data?.detail ?? `workspace failed (${response.status})`, response.status, data?.field);
    }
    const job = await this.pollJob<WorkspaceJobResult>(data.jobId, (snapshot) => {
      if (this.tokens.get("workspace") === token && onUpdate) onUpdate(snapshot);
    });
    this.ensureFresh("workspace", token);
    if (job.status === "failed" || !job.result) {
      throw new ApiError(job.error ?? "workspace job failed", 500);
    }
    return job.result;
  }

  async pollJob<R>(
    jobId: string,
    onUpdate?: (job: JobRecord<R>) => void,
  ): Promise<JobRecord<R>> {
    for (;;) {
      const response = await this.fetchImpl(`${this.baseUrl}/api/jobs/${jobId}`);
      const data = await parseJson(response);
      if (response.status === 404) throw new ApiError("unknown job", 404);
      const job = data as JobRecord<R>;
      if (onUpdate) onUpdate(job);
      if (job.status === "done" || job.status === "failed") return job;
      await new Promise((resolve) => setTimeout(resolve, this.pollIntervalMs));
    }
  }

  async health(): Promise<{ status: string; version: string }> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/health`);
    return parseJson(response);
  }
}
